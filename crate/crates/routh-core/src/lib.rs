//! Exact volumes of Routh-type inner simplices.
//!
//! Given an `(n-1)`-dimensional reference simplex and a positive division
//! ratio for one point on each cycle edge, the cutting hyperplanes through
//! those points enclose a central simplex, and the edge points themselves
//! span a second one. This crate computes the volumes of both, and of every
//! partial intersection of the cut pieces, by three independent routes:
//!
//! - closed-form rational expressions ([`volume`]),
//! - inclusion–exclusion over cyclic blocks of cutter subsets ([`volume`]),
//! - an exact barycentric-coordinate construction that intersects the
//!   hyperplanes and measures determinants ([`geometry`]).
//!
//! All arithmetic is arbitrary-precision rational ([`rational`]); route
//! agreement is checked exactly, with no tolerances. The [`identity`] module
//! verifies the underlying algebraic identities at seeded random rational
//! points.

pub mod cycle;
pub mod geometry;
pub mod identity;
pub mod rational;
pub mod volume;

pub use cycle::{cyclic_blocks, Block, BlockDecomposition, CycleRatios, RouthError};
pub use geometry::{
    central_vertices, division_ratio, edge_point, oracle_central_volume,
    oracle_first_kind_volume, oracle_subset_volume, segment_fraction, sigma, solve_vertex,
    verify_chain_conformance, vertex_chain, volume_ratio, BarycentricPoint, ChainTable, GeoError,
    HyperplaneFunctional, SimplexVertices,
};
pub use identity::{
    check_e2, check_first_kind_n4, check_first_kind_n5, check_ie_n4, sample_ratios,
    IdentityCheckResult, IdentityError, IdentityId, RatioSampler, DEFAULT_E2_MAX_N,
};
pub use rational::{ArithmeticError, ExactRational, ParseRationalError};
pub use volume::{
    block_value, central_volume, closed_form_volume, cyclic_denominator, equal_ratio_volume,
    first_kind_volume, inclusion_exclusion_volume, inclusion_exclusion_volume_naive, ratio_t,
    ratio_u, ratio_v, subset_volume, ProductRegime, VolumeKind, VolumeMethod, VolumeReport,
};
