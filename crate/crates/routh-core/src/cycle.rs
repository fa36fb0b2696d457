//! Cyclic ratio vectors and the block structure of index subsets.
//!
//! Indices live on the cycle `1..=n` and all index arithmetic is modulo `n`
//! (index `n + 1` is index `1`). A proper subset of the cycle decomposes into
//! maximal runs of consecutive indices ("blocks"); a run may wrap through `n`
//! back to `1` and is then keyed by its true cyclic start.

use crate::rational::ExactRational;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Errors raised by the cycle, ratio and volume operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RouthError {
    #[error("a ratio cycle needs at least 3 entries, got {n}")]
    TooFewRatios { n: usize },
    #[error("ratio at cyclic index {index} must be positive")]
    NonPositiveRatio { index: usize },
    #[error("cyclic index {i} out of range 1..={n}")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("step {j} out of range {min}..={max}")]
    StepOutOfRange { j: usize, min: usize, max: usize },
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("subset must be proper (not the whole cycle)")]
    FullSubset,
    #[error("subset element {element} out of range 1..={n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("operation requires n >= {min}, got {n}")]
    DimensionTooSmall { n: usize, min: usize },
    #[error("operation requires n <= {max}, got {n}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("the ratio product is below 1; use the central-volume entry point")]
    ProductBelowOne,
    #[error("equal-ratio parameter must be positive")]
    NonPositiveParameter,
}

/// The vector `(x_1, ..., x_n)` of positive edge-division ratios, indexed
/// cyclically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleRatios {
    ratios: Vec<ExactRational>,
}

impl CycleRatios {
    /// Validates `n >= 3` and strict positivity of every entry.
    pub fn new(ratios: Vec<ExactRational>) -> Result<Self, RouthError> {
        if ratios.len() < 3 {
            return Err(RouthError::TooFewRatios { n: ratios.len() });
        }
        for (idx, r) in ratios.iter().enumerate() {
            if !r.is_positive() {
                return Err(RouthError::NonPositiveRatio { index: idx + 1 });
            }
        }
        Ok(Self { ratios })
    }

    /// The equal-ratio cycle `(k, ..., k)` of length `n`.
    pub fn equal(n: usize, k: &ExactRational) -> Result<Self, RouthError> {
        Self::new(vec![k.clone(); n])
    }

    pub fn n(&self) -> usize {
        self.ratios.len()
    }

    /// The ratio `x_i` for a 1-based index, reduced cyclically; any `i >= 1`
    /// is accepted so callers can write `x.ratio(i + m)` directly.
    pub fn ratio(&self, i: usize) -> &ExactRational {
        debug_assert!(i >= 1);
        &self.ratios[(i - 1) % self.ratios.len()]
    }

    pub fn ratios(&self) -> &[ExactRational] {
        &self.ratios
    }

    pub fn product(&self) -> ExactRational {
        let mut p = ExactRational::one();
        for r in &self.ratios {
            p *= r;
        }
        p
    }

    /// Relabels `A_i -> A_{i+shift}`: the entry at cyclic position `i` of the
    /// result is `x_{i+shift}`.
    pub fn rotated(&self, shift: usize) -> Self {
        let n = self.n();
        let ratios = (1..=n).map(|i| self.ratio(i + shift).clone()).collect();
        Self { ratios }
    }

    /// Reverses the cycle orientation and inverts each ratio:
    /// `x'_i = 1 / x_{n+1-i}`. Applying it twice returns the original cycle.
    pub fn reversed_reciprocal(&self) -> Self {
        let n = self.n();
        let ratios = (1..=n)
            .map(|i| {
                self.ratio(n + 1 - i)
                    .recip()
                    .expect("cycle ratios are nonzero")
            })
            .collect();
        Self { ratios }
    }

    /// Canonical `p/q` strings for reports.
    pub fn to_strings(&self) -> Vec<String> {
        self.ratios.iter().map(|r| r.to_string()).collect()
    }
}

impl Serialize for CycleRatios {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.ratios.len()))?;
        for r in &self.ratios {
            seq.serialize_element(r)?;
        }
        seq.end()
    }
}

/// A maximal run `{start, start+1, ..., start+len-1}` of consecutive cyclic
/// indices, keyed by its true cyclic start (a wrapped run through `n` keeps
/// its start before `n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    start: usize,
    len: usize,
}

impl Block {
    pub(crate) fn new(start: usize, len: usize) -> Self {
        debug_assert!(start >= 1 && len >= 1);
        Self { start, len }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Number of elements in the run (at most `n - 1` for a proper subset).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The members in cycle order, reduced to `1..=n`.
    pub fn members(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        let start = self.start;
        (0..self.len).map(move |offset| (start + offset - 1) % n + 1)
    }
}

/// The blocks of a proper subset, pairwise non-adjacent on the cycle and
/// sorted by start index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    blocks: Vec<Block>,
}

impl BlockDecomposition {
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }
}

/// Converts 1-based elements into a bitmask, validating range and properness.
pub(crate) fn subset_mask(n: usize, elements: &[usize]) -> Result<u64, RouthError> {
    if n > 63 {
        return Err(RouthError::DimensionTooLarge { n, max: 63 });
    }
    let mut mask = 0u64;
    for &e in elements {
        if e < 1 || e > n {
            return Err(RouthError::ElementOutOfRange { element: e, n });
        }
        mask |= 1 << (e - 1);
    }
    if mask == 0 {
        return Err(RouthError::EmptySubset);
    }
    if mask == full_mask(n) {
        return Err(RouthError::FullSubset);
    }
    Ok(mask)
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Maximal cyclic runs of a proper bitmask, as 0-based `(start, len)` pairs
/// sorted by start. The mask must be nonempty and proper.
pub(crate) fn runs_of_mask(n: usize, mask: u64) -> Vec<(usize, usize)> {
    debug_assert!(mask != 0 && mask != full_mask(n));
    // Scan starts just past a guaranteed hole so no run is split by the seam.
    let hole = (!mask & full_mask(n)).trailing_zeros() as usize;
    let mut runs = Vec::new();
    let mut offset = 1;
    while offset <= n {
        let pos = (hole + offset) % n;
        if mask & (1 << pos) != 0 {
            let mut len = 1;
            while offset + len <= n && mask & (1 << ((hole + offset + len) % n)) != 0 {
                len += 1;
            }
            runs.push((pos, len));
            offset += len;
        } else {
            offset += 1;
        }
    }
    runs.sort_unstable_by_key(|&(start, _)| start);
    runs
}

/// Decomposes a proper nonempty subset of `{1..=n}` into its maximal cyclic
/// blocks, sorted by start index.
pub fn cyclic_blocks(n: usize, elements: &[usize]) -> Result<BlockDecomposition, RouthError> {
    let mask = subset_mask(n, elements)?;
    let blocks = runs_of_mask(n, mask)
        .into_iter()
        .map(|(start0, len)| Block::new(start0 + 1, len))
        .collect();
    Ok(BlockDecomposition { blocks })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d).unwrap()
    }

    fn cycle(values: &[(i64, i64)]) -> CycleRatios {
        CycleRatios::new(values.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    #[test]
    fn rejects_short_and_non_positive_cycles() {
        assert_eq!(
            CycleRatios::new(vec![rat(1, 1), rat(2, 1)]).unwrap_err(),
            RouthError::TooFewRatios { n: 2 }
        );
        assert_eq!(
            CycleRatios::new(vec![rat(1, 1), rat(0, 1), rat(2, 1)]).unwrap_err(),
            RouthError::NonPositiveRatio { index: 2 }
        );
        assert_eq!(
            CycleRatios::new(vec![rat(1, 1), rat(2, 1), rat(-1, 2)]).unwrap_err(),
            RouthError::NonPositiveRatio { index: 3 }
        );
    }

    #[test]
    fn cyclic_indexing_wraps() {
        let x = cycle(&[(2, 1), (3, 1), (5, 1)]);
        assert_eq!(x.ratio(4), &rat(2, 1));
        assert_eq!(x.ratio(3 + 2), &rat(3, 1));
    }

    #[test]
    fn reversal_is_an_involution() {
        let x = cycle(&[(1, 2), (3, 1), (5, 7), (4, 1)]);
        assert_eq!(x.reversed_reciprocal().reversed_reciprocal(), x);
        // x'_1 = 1/x_4, x'_2 = 1/x_3, ...
        let rev = x.reversed_reciprocal();
        assert_eq!(rev.ratio(1), &rat(1, 4));
        assert_eq!(rev.ratio(2), &rat(7, 5));
    }

    #[test]
    fn wrapped_block_is_keyed_by_its_cyclic_start() {
        let d = cyclic_blocks(6, &[1, 2, 4, 6]).unwrap();
        let blocks: Vec<(usize, usize)> =
            d.blocks().iter().map(|b| (b.start(), b.len())).collect();
        assert_eq!(blocks, vec![(4, 1), (6, 3)]);
        let wrapped: Vec<usize> = d.blocks()[1].members(6).collect();
        assert_eq!(wrapped, vec![6, 1, 2]);
    }

    #[test]
    fn singleton_and_non_adjacent_subsets() {
        let d = cyclic_blocks(5, &[3]).unwrap();
        assert_eq!(d.blocks().len(), 1);
        assert_eq!((d.blocks()[0].start(), d.blocks()[0].len()), (3, 1));

        let d = cyclic_blocks(4, &[1, 3]).unwrap();
        let blocks: Vec<(usize, usize)> =
            d.blocks().iter().map(|b| (b.start(), b.len())).collect();
        assert_eq!(blocks, vec![(1, 1), (3, 1)]);
    }

    #[test]
    fn rejects_empty_and_full_subsets() {
        assert_eq!(cyclic_blocks(5, &[]).unwrap_err(), RouthError::EmptySubset);
        assert_eq!(
            cyclic_blocks(4, &[1, 2, 3, 4]).unwrap_err(),
            RouthError::FullSubset
        );
        assert_eq!(
            cyclic_blocks(4, &[5]).unwrap_err(),
            RouthError::ElementOutOfRange { element: 5, n: 4 }
        );
    }
}
