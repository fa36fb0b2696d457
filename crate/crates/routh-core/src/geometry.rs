//! Coordinate-level ground truth for the cutting-hyperplane construction.
//!
//! The reference simplex is taken as the unit of volume and every point is
//! written in barycentric coordinates, so volumes are plain determinants and
//! no square roots or distance computations ever appear. This module builds
//! the edge points, the cutting hyperplanes, and the full chain of derived
//! intersection points, then measures simplices by exact determinant. It is
//! deliberately independent of the formula routes in [`crate::volume`]: the
//! two sides are compared in tests, never mixed.
//!
//! Chain points are indexed `(i, j)`: level `j = 0` is the original vertex
//! `i`, level `j = 1` is the edge point on edge `i`, and level `j >= 2` is
//! the intersection of the lines `(chain(i, j-1), vertex(i+j))` and
//! `(chain(i+1, j-1), vertex(i))`. Level `n - 1` gives the vertices of the
//! central simplex.

use crate::cycle::{cyclic_blocks, CycleRatios, RouthError};
use crate::rational::ExactRational;
use crate::volume::{ratio_t, ratio_u, ratio_v};
use std::cmp::Ordering;
use thiserror::Error;

/// Errors raised by the geometric constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeoError {
    #[error("barycentric coordinates must sum to 1")]
    CoordinateSumNotOne,
    #[error("a hyperplane functional needs at least one nonzero coefficient")]
    ZeroFunctional,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the two lines do not meet in a single point")]
    DegenerateIntersection,
    #[error("point does not lie on the reference segment")]
    PointOffLine,
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("chain geometry disagrees with a ratio formula at (i={i}, j={j})")]
    ConformanceFailure { i: usize, j: usize },
    #[error("linear system is singular; configuration is degenerate")]
    SingularSystem,
    #[error("expected {expected} hyperplane functionals, got {got}")]
    WrongFunctionalCount { expected: usize, got: usize },
    #[error("chain and hyperplane-solve routes disagree at vertex {i}")]
    TwoRouteMismatch { i: usize },
    #[error("central-simplex oracle requires the ratio product to exceed 1")]
    ProductNotGreaterThanOne,
    #[error(transparent)]
    Cycle(#[from] RouthError),
}

/// A point of the reference simplex's affine hull: `n` exact coordinates
/// summing to 1. Points inside the simplex have non-negative coordinates,
/// but intersection points are not required to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarycentricPoint {
    coords: Vec<ExactRational>,
}

impl BarycentricPoint {
    pub fn new(coords: Vec<ExactRational>) -> Result<Self, GeoError> {
        let mut sum = ExactRational::zero();
        for c in &coords {
            sum += c;
        }
        if !sum.is_one() {
            return Err(GeoError::CoordinateSumNotOne);
        }
        Ok(Self { coords })
    }

    /// The original vertex `i`: indicator coordinates.
    pub fn vertex(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "vertex index out of range");
        let mut coords = vec![ExactRational::zero(); n];
        coords[i - 1] = ExactRational::one();
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[ExactRational] {
        &self.coords
    }

    /// Coordinate at a 1-based cyclic position.
    pub fn coord(&self, position: usize) -> &ExactRational {
        &self.coords[(position - 1) % self.coords.len()]
    }
}

/// A linear functional cutting out a hyperplane; the associated half-space is
/// where the functional is non-negative. Coefficients are meaningful up to a
/// positive scale, so the constructor keeps the representative it is given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplaneFunctional {
    coeffs: Vec<ExactRational>,
}

impl HyperplaneFunctional {
    pub fn new(coeffs: Vec<ExactRational>) -> Result<Self, GeoError> {
        if coeffs.iter().all(|c| c.is_zero()) {
            return Err(GeoError::ZeroFunctional);
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    /// Exact evaluation at a point of matching dimension.
    pub fn eval(&self, point: &BarycentricPoint) -> ExactRational {
        assert_eq!(self.coeffs.len(), point.dim(), "dimension mismatch");
        let mut acc = ExactRational::zero();
        for (c, b) in self.coeffs.iter().zip(point.coords()) {
            if !c.is_zero() {
                acc += c * b;
            }
        }
        acc
    }
}

/// The `n` corners of a candidate simplex, one barycentric row per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexVertices {
    points: Vec<BarycentricPoint>,
}

impl SimplexVertices {
    /// Requires exactly `n` points of dimension `n`; affine degeneracy is
    /// allowed and yields volume zero.
    pub fn new(points: Vec<BarycentricPoint>) -> Result<Self, GeoError> {
        let n = points.len();
        for p in &points {
            if p.dim() != n {
                return Err(GeoError::DimensionMismatch {
                    expected: n,
                    got: p.dim(),
                });
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[BarycentricPoint] {
        &self.points
    }
}

/// The chosen point on cycle edge `i`, dividing the edge from vertex `i`
/// toward vertex `i+1` in the ratio `x_i : 1`: coordinate `1/(1+x_i)` at
/// position `i` and `x_i/(1+x_i)` at position `i+1`.
pub fn edge_point(x: &CycleRatios, i: usize) -> BarycentricPoint {
    let n = x.n();
    assert!(i >= 1 && i <= n, "edge index out of range");
    let denom = ExactRational::one() + x.ratio(i);
    let mut coords = vec![ExactRational::zero(); n];
    coords[i - 1] = ExactRational::one() / &denom;
    coords[i % n] = x.ratio(i) / &denom;
    BarycentricPoint { coords }
}

/// The cutting functional for hyperplane `i`: `f(b) = x_i b_i - b_{i+1}`.
///
/// The hyperplane passes through every original vertex except `i` and `i+1`
/// and through the edge point on edge `i`; the half-space `f >= 0` contains
/// vertex `i`. The closed form is re-verified against those defining points
/// on every construction.
pub fn sigma(x: &CycleRatios, i: usize) -> HyperplaneFunctional {
    let n = x.n();
    assert!(i >= 1 && i <= n, "hyperplane index out of range");
    let mut coeffs = vec![ExactRational::zero(); n];
    coeffs[i - 1] = x.ratio(i).clone();
    coeffs[i % n] = -ExactRational::one();
    let functional = HyperplaneFunctional { coeffs };
    for j in 1..=n {
        let value = functional.eval(&BarycentricPoint::vertex(n, j));
        if j == i {
            assert!(value.is_positive(), "cutting functional mis-oriented");
        } else if j == i % n + 1 {
            assert!(value.is_negative(), "cutting functional mis-oriented");
        } else {
            assert!(value.is_zero(), "cutting functional misses a defining vertex");
        }
    }
    assert!(
        functional.eval(&edge_point(x, i)).is_zero(),
        "cutting functional misses its edge point"
    );
    functional
}

/// Subtracts coordinate vectors (a direction along the affine hull).
fn diff(a: &BarycentricPoint, b: &BarycentricPoint) -> Vec<ExactRational> {
    a.coords()
        .iter()
        .zip(b.coords())
        .map(|(p, q)| p - q)
        .collect()
}

/// Exact intersection of the lines through `(q, r)` and `(u, v)`.
///
/// Solves the two-parameter system on a nonsingular coordinate pair and then
/// verifies every remaining coordinate, so skew or parallel lines are
/// reported rather than silently projected.
fn line_intersection(
    q: &BarycentricPoint,
    r: &BarycentricPoint,
    u: &BarycentricPoint,
    v: &BarycentricPoint,
) -> Result<BarycentricPoint, GeoError> {
    let n = q.dim();
    let d1 = diff(r, q);
    let d2 = diff(v, u);
    let w = diff(u, q);

    let mut solution: Option<(ExactRational, ExactRational)> = None;
    'search: for a in 0..n {
        for b in a + 1..n {
            let det = &d2[a] * &d1[b] - &d1[a] * &d2[b];
            if det.is_zero() {
                continue;
            }
            let s = (&d2[a] * &w[b] - &w[a] * &d2[b]) / &det;
            let t = (&d1[a] * &w[b] - &w[a] * &d1[b]) / &det;
            solution = Some((s, t));
            break 'search;
        }
    }
    let (s, t) = solution.ok_or(GeoError::DegenerateIntersection)?;

    for c in 0..n {
        if &s * &d1[c] - &t * &d2[c] != w[c] {
            return Err(GeoError::DegenerateIntersection);
        }
    }

    let coords = q
        .coords()
        .iter()
        .zip(&d1)
        .map(|(qc, dc)| qc + &(&s * dc))
        .collect();
    BarycentricPoint::new(coords)
}

/// The fraction `λ` with `p = q + λ (r - q)`, verified on every coordinate.
pub fn segment_fraction(
    p: &BarycentricPoint,
    q: &BarycentricPoint,
    r: &BarycentricPoint,
) -> Result<ExactRational, GeoError> {
    let d = diff(r, q);
    let w = diff(p, q);
    let anchor = d.iter().position(|c| !c.is_zero()).ok_or(GeoError::DegenerateSegment)?;
    let lambda = &w[anchor] / &d[anchor];
    for c in 0..d.len() {
        if &lambda * &d[c] != w[c] {
            return Err(GeoError::PointOffLine);
        }
    }
    Ok(lambda)
}

/// The division ratio `λ / (1 - λ)` of `p` on the segment from `q` to `r`.
pub fn division_ratio(
    p: &BarycentricPoint,
    q: &BarycentricPoint,
    r: &BarycentricPoint,
) -> Result<ExactRational, GeoError> {
    let lambda = segment_fraction(p, q, r)?;
    let complement = ExactRational::one() - &lambda;
    if complement.is_zero() {
        return Err(GeoError::DegenerateSegment);
    }
    Ok(lambda / complement)
}

/// All chain points `A^j_i` for `j = 0..=n-1`, built once by recursive
/// two-line intersection.
#[derive(Debug, Clone)]
pub struct ChainTable {
    n: usize,
    // levels[j][i - 1] is the chain point at level j for cycle index i
    levels: Vec<Vec<BarycentricPoint>>,
}

impl ChainTable {
    pub fn build(x: &CycleRatios) -> Result<Self, GeoError> {
        let n = x.n();
        let mut levels: Vec<Vec<BarycentricPoint>> = Vec::with_capacity(n);
        levels.push((1..=n).map(|i| BarycentricPoint::vertex(n, i)).collect());
        levels.push((1..=n).map(|i| edge_point(x, i)).collect());
        for j in 2..=n - 1 {
            let mut level = Vec::with_capacity(n);
            for i in 1..=n {
                let prev_i = &levels[j - 1][i - 1];
                let prev_next = &levels[j - 1][i % n];
                let target = BarycentricPoint::vertex(n, (i + j - 1) % n + 1);
                let origin = BarycentricPoint::vertex(n, i);
                level.push(line_intersection(prev_i, &target, prev_next, &origin)?);
            }
            levels.push(level);
        }
        Ok(Self { n, levels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The chain point for cycle index `i` at level `j <= n - 1`.
    pub fn point(&self, i: usize, j: usize) -> &BarycentricPoint {
        assert!(j < self.n, "chain level out of range");
        &self.levels[j][(i - 1) % self.n]
    }
}

/// The chain point `A^j_i`, computed recursively by exact two-line
/// intersection. Level 0 is the original vertex, level 1 the edge point.
pub fn vertex_chain(x: &CycleRatios, i: usize, j: usize) -> Result<BarycentricPoint, GeoError> {
    let n = x.n();
    if i < 1 || i > n {
        return Err(GeoError::Cycle(RouthError::IndexOutOfRange { i, n }));
    }
    if j > n - 1 {
        return Err(GeoError::Cycle(RouthError::StepOutOfRange {
            j,
            min: 0,
            max: n - 1,
        }));
    }
    Ok(ChainTable::build(x)?.point(i, j).clone())
}

/// Solves for the unique point on `n - 1` hyperplanes within the affine hull
/// (the coordinate-sum-one constraint supplies the last equation), by exact
/// Gaussian elimination with pivoting on nonzero entries.
pub fn solve_vertex(functionals: &[HyperplaneFunctional]) -> Result<BarycentricPoint, GeoError> {
    let n = functionals
        .first()
        .map(|f| f.coeffs().len())
        .ok_or(GeoError::WrongFunctionalCount { expected: 1, got: 0 })?;
    if functionals.len() != n - 1 {
        return Err(GeoError::WrongFunctionalCount {
            expected: n - 1,
            got: functionals.len(),
        });
    }
    for f in functionals {
        if f.coeffs().len() != n {
            return Err(GeoError::DimensionMismatch {
                expected: n,
                got: f.coeffs().len(),
            });
        }
    }

    // Augmented system: n-1 homogeneous rows plus the sum-to-one row.
    let mut rows: Vec<Vec<ExactRational>> = functionals
        .iter()
        .map(|f| {
            let mut row = f.coeffs().to_vec();
            row.push(ExactRational::zero());
            row
        })
        .collect();
    rows.push(vec![ExactRational::one(); n + 1]);

    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !rows[r][col].is_zero())
            .ok_or(GeoError::SingularSystem)?;
        rows.swap(col, pivot);
        let lead = rows[col][col].clone();
        for c in col..=n {
            rows[col][c] = &rows[col][c] / &lead;
        }
        for r in 0..n {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &rows[col][c];
                    rows[r][c] = &rows[r][c] - &delta;
                }
            }
        }
    }

    let coords = rows.into_iter().map(|mut row| row.pop().unwrap()).collect();
    BarycentricPoint::new(coords)
}

/// The ratio of the simplex volume to the reference simplex volume: the
/// absolute determinant of the barycentric coordinate matrix. Degenerate
/// vertex sets give 0.
pub fn volume_ratio(simplex: &SimplexVertices) -> ExactRational {
    let n = simplex.points().len();
    let mut rows: Vec<Vec<ExactRational>> = simplex
        .points()
        .iter()
        .map(|p| p.coords().to_vec())
        .collect();
    let mut det = ExactRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
            return ExactRational::zero();
        };
        if pivot != col {
            rows.swap(col, pivot);
            det = -det;
        }
        let lead = rows[col][col].clone();
        det *= &lead;
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &lead;
            for c in col..n {
                let delta = &factor * &rows[col][c];
                rows[r][c] = &rows[r][c] - &delta;
            }
        }
    }
    det.abs()
}

/// The central simplex corner for each cycle index: the level `n - 1` chain
/// points.
pub fn central_vertices(x: &CycleRatios) -> Result<Vec<BarycentricPoint>, GeoError> {
    let n = x.n();
    let chain = ChainTable::build(x)?;
    Ok((1..=n).map(|i| chain.point(i, n - 1).clone()).collect())
}

/// The hyperplanes meeting at central vertex `i`: all of them except the one
/// at cyclic index `i - 1`, which carries the opposite facet. The derivation
/// is checked at runtime by two-route agreement in
/// [`oracle_central_volume`].
fn central_vertex_functionals(x: &CycleRatios, i: usize) -> Vec<HyperplaneFunctional> {
    let n = x.n();
    let excluded = if i == 1 { n } else { i - 1 };
    (1..=n).filter(|&p| p != excluded).map(|p| sigma(x, p)).collect()
}

/// Volume of the central simplex measured in coordinates.
///
/// Each corner is constructed twice — once by the recursive chain of line
/// intersections and once by solving its `n - 1` defining hyperplanes — and
/// the two routes must agree exactly before the determinant is taken.
pub fn oracle_central_volume(x: &CycleRatios) -> Result<ExactRational, GeoError> {
    if x.product().cmp_exact(&ExactRational::one()) != Ordering::Greater {
        return Err(GeoError::ProductNotGreaterThanOne);
    }
    let chain_route = central_vertices(x)?;
    for (idx, point) in chain_route.iter().enumerate() {
        let i = idx + 1;
        let solved = solve_vertex(&central_vertex_functionals(x, i))?;
        if solved != *point {
            return Err(GeoError::TwoRouteMismatch { i });
        }
    }
    Ok(volume_ratio(&SimplexVertices::new(chain_route)?))
}

/// Volume of `∩_{i∈I} T_i` measured in coordinates.
///
/// The corner list walks the cycle once starting at the first block: each
/// block contributes its chain points (levels 0 through its length), and
/// every position not covered by a block keeps its original vertex.
pub fn oracle_subset_volume(
    x: &CycleRatios,
    elements: &[usize],
) -> Result<ExactRational, GeoError> {
    let n = x.n();
    let decomposition = cyclic_blocks(n, elements)?;
    let chain = ChainTable::build(x)?;

    let block_at = |position: usize| {
        decomposition
            .blocks()
            .iter()
            .find(|b| b.start() == position)
            .map(|b| b.len())
    };

    let first = decomposition.blocks()[0].start();
    let mut corners = Vec::with_capacity(n);
    let mut pos = first;
    while pos < first + n {
        let here = (pos - 1) % n + 1;
        if let Some(len) = block_at(here) {
            for level in 0..=len {
                corners.push(chain.point(here, level).clone());
            }
            pos += len + 1;
        } else {
            corners.push(BarycentricPoint::vertex(n, here));
            pos += 1;
        }
    }
    debug_assert_eq!(corners.len(), n);
    Ok(volume_ratio(&SimplexVertices::new(corners)?))
}

/// Volume of the simplex spanned by the edge points, measured in
/// coordinates.
pub fn oracle_first_kind_volume(x: &CycleRatios) -> ExactRational {
    let n = x.n();
    let points = (1..=n).map(|i| edge_point(x, i)).collect();
    volume_ratio(&SimplexVertices::new(points).expect("edge points are square"))
}

/// Exact conformance checks tying the coordinate construction to the ratio
/// formulas; used by the test suites.
///
/// Verifies, for every cycle index:
/// - hyperplane membership of the chain: level `j` point of index `i` and
///   level `j-1` point of index `i+1` both lie on hyperplane `i+j-1`,
/// - the cut fraction: the level `j` point divides the segment from the
///   level `j-1` point to vertex `i+j` by `t_{i,j}`,
/// - the growth ratio: the level `j` point divides the segment from vertex
///   `i` to the level `j-1` point of index `i+1` in the ratio `v_{i,j} : 1`,
/// - the shifted ratio: the level `j` point of index `i+1` divides the
///   segment from the level `j-1` point of index `i+1` to vertex `i+j+1` in
///   the ratio `u_{i,j} : 1`.
pub fn verify_chain_conformance(x: &CycleRatios) -> Result<(), GeoError> {
    let n = x.n();
    let chain = ChainTable::build(x)?;
    for i in 1..=n {
        let f = sigma(x, i);
        if !f.eval(chain.point(i, 1)).is_zero() {
            return Err(GeoError::ConformanceFailure { i, j: 1 });
        }
        for j in 1..=n - 1 {
            let fraction = segment_fraction(
                chain.point(i, j),
                chain.point(i, j - 1),
                &BarycentricPoint::vertex(n, (i + j - 1) % n + 1),
            )?;
            if fraction != ratio_t(x, i, j)? {
                return Err(GeoError::ConformanceFailure { i, j });
            }
        }
        for j in 2..=n - 1 {
            let f = sigma(x, (i + j - 2) % n + 1);
            if !f.eval(chain.point(i, j)).is_zero() {
                return Err(GeoError::ConformanceFailure { i, j });
            }
            if !f.eval(chain.point(i + 1, j - 1)).is_zero() {
                return Err(GeoError::ConformanceFailure { i, j });
            }

            let v = division_ratio(
                chain.point(i, j),
                &BarycentricPoint::vertex(n, i),
                chain.point(i + 1, j - 1),
            )?;
            if v != ratio_v(x, i, j)? {
                return Err(GeoError::ConformanceFailure { i, j });
            }

            let u = division_ratio(
                chain.point(i + 1, j),
                chain.point(i + 1, j - 1),
                &BarycentricPoint::vertex(n, (i + j) % n + 1),
            )?;
            if u != ratio_u(x, i, j)? {
                return Err(GeoError::ConformanceFailure { i, j });
            }
        }
    }
    Ok(())
}
