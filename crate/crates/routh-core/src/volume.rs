//! Volume formulas for the cutting-hyperplane construction.
//!
//! Choosing a point on each cycle edge of the reference simplex with division
//! ratio `x_i` determines `n` cutting hyperplanes. Each hyperplane bounds a
//! piece `T_i` of the simplex, and this module evaluates, exactly:
//!
//! - the ratio chains `v`, `u`, `t` that drive every other formula,
//! - the volume of `∩_{i∈B} T_i` for a single cyclic block `B` and, by block
//!   products, for an arbitrary proper subset of cutters,
//! - the central simplex volume both by alternating subset sums (with block
//!   values memoized) and in closed form,
//! - the volume of the simplex spanned by the edge points themselves, and
//! - the equal-ratio specializations of both laws.

use crate::cycle::{cyclic_blocks, full_mask, Block, CycleRatios, RouthError};
use crate::rational::ExactRational;
use serde::Serialize;
use std::cmp::Ordering;

/// Which computation produced a reported volume.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VolumeMethod {
    ClosedForm,
    InclusionExclusion,
    Oracle,
    FirstKind,
}

/// Position of the ratio product relative to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ProductRegime {
    #[serde(rename = "gt1")]
    Gt1,
    #[serde(rename = "eq1")]
    Eq1,
    #[serde(rename = "lt1")]
    Lt1,
}

impl ProductRegime {
    pub fn of(x: &CycleRatios) -> Self {
        match x.product().cmp_exact(&ExactRational::one()) {
            Ordering::Greater => ProductRegime::Gt1,
            Ordering::Equal => ProductRegime::Eq1,
            Ordering::Less => ProductRegime::Lt1,
        }
    }
}

/// A computed volume with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VolumeReport {
    pub method: VolumeMethod,
    pub value: ExactRational,
    pub n: usize,
    pub x: CycleRatios,
    pub product_regime: ProductRegime,
}

impl VolumeReport {
    fn new(method: VolumeMethod, value: ExactRational, x: &CycleRatios) -> Self {
        debug_assert!(!value.is_negative());
        Self {
            method,
            value,
            n: x.n(),
            x: x.clone(),
            product_regime: ProductRegime::of(x),
        }
    }
}

fn check_index(i: usize, n: usize) -> Result<(), RouthError> {
    if i < 1 || i > n {
        return Err(RouthError::IndexOutOfRange { i, n });
    }
    Ok(())
}

fn check_step(j: usize, min: usize, max: usize) -> Result<(), RouthError> {
    if j < min || j > max {
        return Err(RouthError::StepOutOfRange { j, min, max });
    }
    Ok(())
}

/// The growth ratio `v_{i,j} = x_i + x_i x_{i+1} + ... + x_i ... x_{i+j-1}`:
/// the sum of the first `j` prefix products starting at `x_i`.
pub fn ratio_v(x: &CycleRatios, i: usize, j: usize) -> Result<ExactRational, RouthError> {
    let n = x.n();
    check_index(i, n)?;
    check_step(j, 2, n - 1)?;
    let mut prefix = ExactRational::one();
    let mut sum = ExactRational::zero();
    for m in 0..j {
        prefix *= x.ratio(i + m);
        sum += &prefix;
    }
    Ok(sum)
}

/// The shifted ratio
/// `u_{i,j} = x_{i+1}...x_{i+j} / (1 + x_{i+1} + ... + x_{i+1}...x_{i+j-1})`.
pub fn ratio_u(x: &CycleRatios, i: usize, j: usize) -> Result<ExactRational, RouthError> {
    let n = x.n();
    check_index(i, n)?;
    check_step(j, 2, n - 1)?;
    let mut prefix = ExactRational::one();
    let mut denom = ExactRational::one();
    for m in 1..=j {
        prefix *= x.ratio(i + m);
        if m < j {
            denom += &prefix;
        }
    }
    Ok(prefix / denom)
}

/// The cut fraction
/// `t_{i,j} = x_i...x_{i+j-1} / (1 + x_i + x_i x_{i+1} + ... + x_i...x_{i+j-1})`,
/// defined for `j >= 1` with `t_{i,1} = x_i / (1 + x_i)`.
pub fn ratio_t(x: &CycleRatios, i: usize, j: usize) -> Result<ExactRational, RouthError> {
    let n = x.n();
    check_index(i, n)?;
    check_step(j, 1, n - 1)?;
    let mut prefix = ExactRational::one();
    let mut denom = ExactRational::one();
    for m in 0..j {
        prefix *= x.ratio(i + m);
        denom += &prefix;
    }
    Ok(prefix / denom)
}

/// The volume of `∩_{i∈B} T_i` for one cyclic block: the product of the cut
/// fractions `t_{start,1} t_{start,2} ... t_{start,len}`.
pub fn block_value(x: &CycleRatios, block: &Block) -> ExactRational {
    let n = x.n();
    assert!(block.start() >= 1 && block.start() <= n, "block start out of range");
    assert!(block.len() < n, "block covers the whole cycle");
    let mut prefix = ExactRational::one();
    let mut partial = ExactRational::one();
    let mut value = ExactRational::one();
    for m in 0..block.len() {
        prefix *= x.ratio(block.start() + m);
        partial += &prefix;
        value *= &prefix / &partial;
    }
    value
}

/// The volume of `∩_{i∈I} T_i` for a proper nonempty subset `I`: the product
/// of the block values of its cyclic decomposition.
pub fn subset_volume(x: &CycleRatios, elements: &[usize]) -> Result<ExactRational, RouthError> {
    let decomposition = cyclic_blocks(x.n(), elements)?;
    let mut value = ExactRational::one();
    for block in decomposition.blocks() {
        value *= block_value(x, block);
    }
    Ok(value)
}

/// Block values for every `(start, len)` pair; only `n(n-1)` exist, so the
/// `2^n` subset enumeration reduces to sign-product lookups.
fn block_table(x: &CycleRatios) -> Vec<Vec<ExactRational>> {
    let n = x.n();
    (1..=n)
        .map(|start| {
            let mut prefix = ExactRational::one();
            let mut partial = ExactRational::one();
            let mut value = ExactRational::one();
            let mut row = Vec::with_capacity(n - 1);
            for m in 0..n - 1 {
                prefix *= x.ratio(start + m);
                partial += &prefix;
                value *= &prefix / &partial;
                row.push(value.clone());
            }
            row
        })
        .collect()
}

/// The alternating subset sum `1 + Σ_{∅≠I⊊{1..n}} (-1)^{|I|} V(I)` evaluated
/// with memoized block values. Its sign alternates with the parity of `n`;
/// see [`inclusion_exclusion_volume`].
fn alternating_subset_sum(x: &CycleRatios) -> Result<ExactRational, RouthError> {
    let n = x.n();
    if n > 63 {
        return Err(RouthError::DimensionTooLarge { n, max: 63 });
    }
    let table = block_table(x);
    let full = full_mask(n);
    let mut total = ExactRational::one();
    for mask in 1..full {
        // Walk the runs of the mask starting just past a hole, multiplying
        // memoized block values as they are found.
        let hole = (!mask & full).trailing_zeros() as usize;
        let mut term: Option<ExactRational> = None;
        let mut offset = 1;
        while offset <= n {
            let pos = (hole + offset) % n;
            if mask & (1 << pos) != 0 {
                let mut len = 1;
                while offset + len <= n && mask & (1 << ((hole + offset + len) % n)) != 0 {
                    len += 1;
                }
                let value = &table[pos][len - 1];
                term = Some(match term {
                    None => value.clone(),
                    Some(acc) => acc * value,
                });
                offset += len;
            } else {
                offset += 1;
            }
        }
        let term = term.expect("mask is nonempty");
        if mask.count_ones() % 2 == 1 {
            total -= term;
        } else {
            total += term;
        }
    }
    Ok(total)
}

/// Central simplex volume by inclusion–exclusion over the cutter subsets,
/// normalized by the parity factor `(-1)^{n+1}` so the result is the volume
/// whenever the ratio product is at least 1.
///
/// Subsets are enumerated as `n`-bit masks and block values are precomputed
/// for all `n(n-1)` `(start, len)` pairs, so each subset costs one signed
/// product of lookups.
pub fn inclusion_exclusion_volume(x: &CycleRatios) -> Result<ExactRational, RouthError> {
    let n = x.n();
    if n < 4 {
        return Err(RouthError::DimensionTooSmall { n, min: 4 });
    }
    let total = alternating_subset_sum(x)?;
    Ok(if n % 2 == 0 { -total } else { total })
}

/// Reference implementation of [`inclusion_exclusion_volume`] that rebuilds
/// every subset's block decomposition from scratch. Used to cross-check the
/// memoized path; exponentially slow, keep `n` small.
pub fn inclusion_exclusion_volume_naive(x: &CycleRatios) -> Result<ExactRational, RouthError> {
    let n = x.n();
    if n < 4 {
        return Err(RouthError::DimensionTooSmall { n, min: 4 });
    }
    if n > 24 {
        return Err(RouthError::DimensionTooLarge { n, max: 24 });
    }
    let mut total = ExactRational::one();
    for mask in 1..full_mask(n) {
        let elements: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).map(|b| b + 1).collect();
        let term = subset_volume(x, &elements)?;
        if elements.len() % 2 == 1 {
            total -= term;
        } else {
            total += term;
        }
    }
    Ok(if n % 2 == 0 { -total } else { total })
}

/// The denominator factor `D_k = 1 + x_k + x_k x_{k+1} + ... + x_k...x_{k+n-2}`:
/// one plus the first `n - 1` prefix products starting at `x_k`.
pub fn cyclic_denominator(x: &CycleRatios, k: usize) -> Result<ExactRational, RouthError> {
    let n = x.n();
    check_index(k, n)?;
    let mut prefix = ExactRational::one();
    let mut sum = ExactRational::one();
    for m in 0..n - 1 {
        prefix *= x.ratio(k + m);
        sum += &prefix;
    }
    Ok(sum)
}

/// Central simplex volume in closed form,
/// `(x_1...x_n - 1)^{n-1} / (D_1 D_2 ... D_n)`,
/// valid when the ratio product is at least 1. Callers with a product below 1
/// must go through [`central_volume`], which reduces by cycle reversal.
pub fn closed_form_volume(x: &CycleRatios) -> Result<ExactRational, RouthError> {
    let n = x.n();
    let product = x.product();
    if product.cmp_exact(&ExactRational::one()) == Ordering::Less {
        return Err(RouthError::ProductBelowOne);
    }
    let numerator = (product - ExactRational::one()).pow((n - 1) as u32);
    let mut denominator = ExactRational::one();
    for k in 1..=n {
        denominator *= cyclic_denominator(x, k)?;
    }
    Ok(numerator / denominator)
}

/// Central simplex volume for any positive ratio cycle.
///
/// If the ratio product exceeds 1 this is the closed form directly; if it
/// equals 1 the cutting hyperplanes meet in a single point and the volume is
/// zero; if it is below 1 the cycle orientation is reversed (`x'_i =
/// 1/x_{n+1-i}`), which flips the product above 1 and leaves the volume
/// unchanged.
pub fn central_volume(x: &CycleRatios) -> VolumeReport {
    let value = match ProductRegime::of(x) {
        ProductRegime::Eq1 => ExactRational::zero(),
        ProductRegime::Gt1 => {
            closed_form_volume(x).expect("product above one admits the closed form")
        }
        ProductRegime::Lt1 => closed_form_volume(&x.reversed_reciprocal())
            .expect("reversed cycle has product above one"),
    };
    VolumeReport::new(VolumeMethod::ClosedForm, value, x)
}

/// Volume of the simplex spanned by the edge points themselves:
/// `|1 - (-1)^n x_1...x_n| / ((1+x_1)...(1+x_n))`.
pub fn first_kind_volume(x: &CycleRatios) -> ExactRational {
    let n = x.n();
    let product = x.product();
    let signed = if n % 2 == 0 {
        ExactRational::one() - product
    } else {
        ExactRational::one() + product
    };
    let mut denominator = ExactRational::one();
    for i in 1..=n {
        denominator *= ExactRational::one() + x.ratio(i);
    }
    signed.abs() / denominator
}

/// Which of the two volume laws an equal-ratio evaluation targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VolumeKind {
    Central,
    FirstKind,
}

/// Equal-ratio specializations: with every `x_i = k`, the central volume is
/// `|k-1|^n / |k^n - 1|` and the first-kind volume is
/// `|k^n + (-1)^{n+1}| / (k+1)^n`. For `k = 1` the central case degenerates to
/// a point and the volume is 0 (not an error).
pub fn equal_ratio_volume(
    n: usize,
    k: &ExactRational,
    kind: VolumeKind,
) -> Result<ExactRational, RouthError> {
    if n < 3 {
        return Err(RouthError::DimensionTooSmall { n, min: 3 });
    }
    if !k.is_positive() {
        return Err(RouthError::NonPositiveParameter);
    }
    match kind {
        VolumeKind::Central => {
            if k.is_one() {
                return Ok(ExactRational::zero());
            }
            let numerator = (k - ExactRational::one()).abs().pow(n as u32);
            let denominator = (k.pow(n as u32) - ExactRational::one()).abs();
            Ok(numerator / denominator)
        }
        VolumeKind::FirstKind => {
            let signed = if n % 2 == 0 {
                k.pow(n as u32) - ExactRational::one()
            } else {
                k.pow(n as u32) + ExactRational::one()
            };
            let denominator = (k + ExactRational::one()).pow(n as u32);
            Ok(signed.abs() / denominator)
        }
    }
}
