//! Exact verification of the algebraic volume identities at sampled
//! rational points, with reproducible seeds and machine-readable rows.

use crate::cycle::{cyclic_blocks, full_mask, CycleRatios, RouthError};
use crate::rational::ExactRational;
use crate::volume::{block_value, cyclic_denominator};
use serde::Serialize;
use thiserror::Error;

/// Largest cycle length accepted by [`check_e2`] unless a caller raises it.
pub const DEFAULT_E2_MAX_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("identity requires n = {expected}, got {got}")]
    WrongCycleLength { expected: usize, got: usize },
    #[error("identity is checked for {min} <= n <= {max}, got {got}")]
    CycleLengthOutOfRange { min: usize, max: usize, got: usize },
    #[error("sampler bound must be at least 2, got {bound}")]
    BoundTooSmall { bound: u64 },
    #[error(transparent)]
    Cycle(#[from] RouthError),
}

/// Which identity a check row refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IdentityId {
    #[serde(rename = "ie_n4")]
    IeN4,
    #[serde(rename = "e2_general")]
    E2General,
    #[serde(rename = "first_kind_n4")]
    FirstKindN4,
    #[serde(rename = "first_kind_n5")]
    FirstKindN5,
}

/// One exact evaluation of an identity at a rational point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheckResult {
    pub identity_id: IdentityId,
    pub n: usize,
    pub x: CycleRatios,
    pub lhs: ExactRational,
    pub rhs: ExactRational,
    pub holds: bool,
}

impl IdentityCheckResult {
    fn new(identity_id: IdentityId, x: &CycleRatios, lhs: ExactRational, rhs: ExactRational) -> Self {
        let holds = lhs == rhs;
        Self {
            identity_id,
            n: x.n(),
            x: x.clone(),
            lhs,
            rhs,
            holds,
        }
    }
}

fn require_n(x: &CycleRatios, expected: usize) -> Result<(), IdentityError> {
    if x.n() != expected {
        return Err(IdentityError::WrongCycleLength {
            expected,
            got: x.n(),
        });
    }
    Ok(())
}

fn one_plus(r: &ExactRational) -> ExactRational {
    ExactRational::one() + r
}

/// The fifteen terms of the tetrahedral inclusion–exclusion identity, written
/// out exactly as displayed: the leading 1, four single-cut volumes, four
/// adjacent and two opposite pair volumes, and four triple volumes, each with
/// its inclusion–exclusion sign.
fn ie_n4_terms(x: &CycleRatios) -> Vec<ExactRational> {
    let one = ExactRational::one;
    let mut terms = Vec::with_capacity(15);
    terms.push(one());
    for i in 1..=4 {
        terms.push(-(x.ratio(i) / &one_plus(x.ratio(i))));
    }
    for i in 1..=4 {
        let a = x.ratio(i);
        let b = x.ratio(i + 1);
        let numerator = a * a * b;
        let denominator = one_plus(a) * (one() + a + &(a * b));
        terms.push(numerator / denominator);
    }
    for i in 1..=2 {
        let a = x.ratio(i);
        let b = x.ratio(i + 2);
        terms.push((a * b) / (one_plus(a) * one_plus(b)));
    }
    for i in 1..=4 {
        let a = x.ratio(i);
        let b = x.ratio(i + 1);
        let c = x.ratio(i + 2);
        let ab = a * b;
        let abc = &ab * c;
        let numerator = a * a * a * b * b * c;
        let denominator =
            one_plus(a) * (one() + a + &ab) * (one() + a + &ab + &abc);
        terms.push(-(numerator / denominator));
    }
    terms
}

/// Checks the tetrahedral identity: the alternating sum of the fifteen
/// displayed cut volumes against `(x_1 x_2 x_3 x_4 - 1)^3` over the four
/// cyclic denominator factors. The displayed sum carries the complement-side
/// sign for even cycles, so it is negated to face the volume form.
pub fn check_ie_n4(x: &CycleRatios) -> Result<IdentityCheckResult, IdentityError> {
    require_n(x, 4)?;
    let terms = ie_n4_terms(x);
    debug_assert_eq!(terms.len(), 15);
    let mut sum = ExactRational::zero();
    for term in terms {
        sum += term;
    }
    let lhs = -sum;

    let mut rhs = (x.product() - ExactRational::one()).pow(3);
    for k in 1..=4 {
        rhs = rhs / cyclic_denominator(x, k)?;
    }
    Ok(IdentityCheckResult::new(IdentityId::IeN4, x, lhs, rhs))
}

/// Alternating block-product sum over every proper nonempty subset, built
/// from the block machinery, plus the number of terms including the
/// leading 1.
fn alternating_block_sum(x: &CycleRatios) -> Result<(ExactRational, usize), IdentityError> {
    let n = x.n();
    let mut sum = ExactRational::one();
    let mut term_count = 1usize;
    for mask in 1..full_mask(n) {
        let elements: Vec<usize> =
            (0..n).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
        let decomposition = cyclic_blocks(n, &elements)?;
        let mut product = ExactRational::one();
        for block in decomposition.blocks() {
            product *= block_value(x, block);
        }
        if elements.len() % 2 == 1 {
            sum -= product;
        } else {
            sum += product;
        }
        term_count += 1;
    }
    Ok((sum, term_count))
}

/// Checks the general identity at cycle length `n`: the parity-normalized
/// alternating block-product sum against
/// `(x_1...x_n - 1)^{n-1} / (D_1 ... D_n)`.
pub fn check_e2(x: &CycleRatios, max_n: usize) -> Result<IdentityCheckResult, IdentityError> {
    let n = x.n();
    if n < 4 || n > max_n {
        return Err(IdentityError::CycleLengthOutOfRange {
            min: 4,
            max: max_n,
            got: n,
        });
    }
    let (sum, term_count) = alternating_block_sum(x)?;
    debug_assert_eq!(term_count, (1usize << n) - 1);
    let lhs = if n % 2 == 0 { -sum } else { sum };

    let mut rhs = (x.product() - ExactRational::one()).pow((n - 1) as u32);
    for k in 1..=n {
        rhs = rhs / cyclic_denominator(x, k)?;
    }
    Ok(IdentityCheckResult::new(IdentityId::E2General, x, lhs, rhs))
}

/// Checks the displayed first-kind identity for `n = 4`: seven terms against
/// `(1 - x_1 x_2 x_3 x_4) / ((1+x_1)(1+x_2)(1+x_3)(1+x_4))`. Both sides are
/// signed exactly as displayed.
pub fn check_first_kind_n4(x: &CycleRatios) -> Result<IdentityCheckResult, IdentityError> {
    require_n(x, 4)?;
    let one = ExactRational::one;
    let mut lhs = one();
    for i in 1..=4 {
        let denominator =
            one_plus(x.ratio(i)) * one_plus(x.ratio(i + 1)) * one_plus(x.ratio(i + 2));
        lhs -= x.ratio(i) / &denominator;
    }
    for i in 1..=2 {
        let a = x.ratio(i);
        let b = x.ratio(i + 2);
        lhs -= (a * b) / (one_plus(a) * one_plus(b));
    }

    let mut denominator = one();
    for i in 1..=4 {
        denominator *= one_plus(x.ratio(i));
    }
    let rhs = (one() - x.product()) / denominator;
    Ok(IdentityCheckResult::new(IdentityId::FirstKindN4, x, lhs, rhs))
}

/// Checks the displayed first-kind identity for `n = 5`: sixteen terms
/// against `(1 + x_1...x_5) / ((1+x_1)...(1+x_5))`.
///
/// The five single terms divide `x_i` by every `(1+x_j)` except `j = i+1`;
/// the five pair and five triple terms run over the non-adjacent index
/// patterns, each divided by its own `(1+x)` factors.
pub fn check_first_kind_n5(x: &CycleRatios) -> Result<IdentityCheckResult, IdentityError> {
    require_n(x, 5)?;
    let one = ExactRational::one;
    let mut lhs = one();
    for i in 1..=5 {
        let mut denominator = one();
        for j in 1..=5 {
            if j != i % 5 + 1 {
                denominator *= one_plus(x.ratio(j));
            }
        }
        lhs -= x.ratio(i) / &denominator;
    }
    for i in 1..=5 {
        let a = x.ratio(i);
        let b = x.ratio(i + 2);
        lhs -= (a * b) / (one_plus(a) * one_plus(b));
    }
    for &(i, j, k) in &[(1, 2, 4), (1, 3, 4), (1, 3, 5), (2, 3, 5), (2, 4, 5)] {
        let numerator = x.ratio(i) * x.ratio(j) * x.ratio(k);
        let denominator =
            one_plus(x.ratio(i)) * one_plus(x.ratio(j)) * one_plus(x.ratio(k));
        lhs += numerator / denominator;
    }

    let mut denominator = one();
    for i in 1..=5 {
        denominator *= one_plus(x.ratio(i));
    }
    let rhs = (one() + x.product()) / denominator;
    Ok(IdentityCheckResult::new(IdentityId::FirstKindN5, x, lhs, rhs))
}

/// Deterministic rational sampler.
///
/// A fixed 64-bit linear congruential generator,
/// `state <- 6364136223846793005 * state + 1442695040888963407 (mod 2^64)`,
/// advanced before each draw; a draw maps the top bits to `1..=bound` via
/// `((state >> 33) mod bound) + 1`. Each rational takes two draws, numerator
/// first. The same seed therefore yields the same sequence on every
/// platform.
#[derive(Debug, Clone)]
pub struct RatioSampler {
    state: u64,
    bound: u64,
}

impl RatioSampler {
    pub fn new(seed: u64, bound: u64) -> Result<Self, IdentityError> {
        if bound < 2 {
            return Err(IdentityError::BoundTooSmall { bound });
        }
        Ok(Self { state: seed, bound })
    }

    fn next_draw(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.state >> 33) % self.bound + 1
    }

    /// A positive rational `p/q` with `1 <= p, q <= bound`.
    pub fn next_rational(&mut self) -> ExactRational {
        let p = self.next_draw() as i64;
        let q = self.next_draw() as i64;
        ExactRational::new(p, q).expect("draws are positive")
    }

    /// A ratio cycle of length `n`.
    pub fn next_ratios(&mut self, n: usize) -> Result<CycleRatios, RouthError> {
        CycleRatios::new((0..n).map(|_| self.next_rational()).collect())
    }

    /// The first sampled cycle whose ratio product satisfies `accept`.
    pub fn next_ratios_where(
        &mut self,
        n: usize,
        accept: impl Fn(&CycleRatios) -> bool,
    ) -> Result<CycleRatios, RouthError> {
        loop {
            let x = self.next_ratios(n)?;
            if accept(&x) {
                return Ok(x);
            }
        }
    }
}

/// One deterministic ratio cycle for `(n, seed, bound)`.
pub fn sample_ratios(n: usize, seed: u64, bound: u64) -> Result<CycleRatios, IdentityError> {
    let mut sampler = RatioSampler::new(seed, bound)?;
    Ok(sampler.next_ratios(n)?)
}
