//! Full-dimensional lattice polytopes given by their vertices.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lattice::{self, orthogonal_vector, primitive_part, rational, simplex_determinant, IntegerVector};
use crate::placing::placing_triangulation;

/// Default cap on the number of bounding-box points scanned by
/// [`LatticePolytope::lattice_points`].
pub const DEFAULT_POINT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("a polytope needs at least one vertex")]
    Empty,
    #[error("ambient dimension must be positive")]
    ZeroDimensional,
    #[error("vertex {index} has dimension {found}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("vertex {0} is listed more than once")]
    DuplicateVertex(IntegerVector),
    #[error("points span an affine space of dimension {affine_dim} in Z^{ambient_dim}")]
    NotFullDimensional { affine_dim: usize, ambient_dim: usize },
    #[error("{0} is not a vertex of the convex hull of the given points")]
    RedundantPoint(IntegerVector),
    #[error("bounding box holds {candidates} points, over the budget of {budget}")]
    PointBudgetExceeded { candidates: BigInt, budget: u64 },
}

/// The closed half-space `{x : <normal, x> <= offset}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    pub normal: IntegerVector,
    pub offset: BigInt,
}

impl HalfSpace {
    /// `offset - <normal, x>`: positive strictly inside, zero on the hyperplane.
    pub fn slack(&self, x: &IntegerVector) -> BigInt {
        &self.offset - self.normal.dot(x)
    }
}

impl fmt::Display for HalfSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, x> <= {}", self.normal, self.offset)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePointSet {
    /// Every lattice point, in lexicographic order.
    pub all_points: Vec<IntegerVector>,
    pub boundary_points: Vec<IntegerVector>,
    pub interior_points: Vec<IntegerVector>,
}

/// A full-dimensional lattice polytope in `Z^d`.
///
/// The vertex list is validated on construction: every listed point must be
/// a vertex of the hull, so redundant points are rejected rather than
/// dropped. Facets are computed at the same time and never change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<IntegerVector>,
    facets: Vec<HalfSpace>,
}

impl LatticePolytope {
    pub fn new(vertices: Vec<IntegerVector>) -> Result<Self, PolytopeError> {
        let dim = check_points(&vertices)?;
        let facets = facets_of(&vertices, dim);
        if let Some(v) = vertices.iter().find(|v| !is_vertex(v, &facets, dim)) {
            return Err(PolytopeError::RedundantPoint(v.clone()));
        }
        Ok(Self { dim, vertices, facets })
    }

    /// Convex hull of arbitrary points; points that are not vertices are
    /// discarded and duplicates merged. Vertices keep their first-seen order.
    pub fn hull_of(points: &[IntegerVector]) -> Result<Self, PolytopeError> {
        let mut seen = BTreeSet::new();
        let unique: Vec<IntegerVector> = points.iter().filter(|p| seen.insert(*p)).cloned().collect();
        let dim = check_points(&unique)?;
        let facets = facets_of(&unique, dim);
        let vertices = unique.into_iter().filter(|v| is_vertex(v, &facets, dim)).collect();
        Ok(Self { dim, vertices, facets })
    }

    pub fn from_i64(vertices: &[&[i64]]) -> Result<Self, PolytopeError> {
        Self::new(vertices.iter().map(|v| IntegerVector::from_i64(v)).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[IntegerVector] {
        &self.vertices
    }

    /// The irredundant H-representation, sorted.
    pub fn facet_halfspaces(&self) -> &[HalfSpace] {
        &self.facets
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    pub fn contains(&self, x: &IntegerVector) -> Result<Membership, PolytopeError> {
        if x.dim() != self.dim {
            return Err(PolytopeError::DimensionMismatch { index: 0, expected: self.dim, found: x.dim() });
        }
        let mut tight = false;
        for h in &self.facets {
            match h.slack(x).sign() {
                num_bigint::Sign::Minus => return Ok(Membership::Outside),
                num_bigint::Sign::NoSign => tight = true,
                num_bigint::Sign::Plus => {}
            }
        }
        Ok(if tight { Membership::Boundary } else { Membership::Interior })
    }

    pub fn lattice_points(&self) -> Result<LatticePointSet, PolytopeError> {
        self.lattice_points_with_budget(DEFAULT_POINT_BUDGET)
    }

    /// Scans the integer bounding box, refusing boxes with more than
    /// `budget` points.
    pub fn lattice_points_with_budget(&self, budget: u64) -> Result<LatticePointSet, PolytopeError> {
        let (lo, hi) = self.bounding_box();
        let candidates: BigInt = lo.iter().zip(&hi).map(|(a, b)| b - a + 1).product();
        if candidates > BigInt::from(budget) {
            return Err(PolytopeError::PointBudgetExceeded { candidates, budget });
        }
        let mut set = LatticePointSet { all_points: vec![], boundary_points: vec![], interior_points: vec![] };
        let mut push = |p: IntegerVector, m: Membership| match m {
            Membership::Interior => {
                set.all_points.push(p.clone());
                set.interior_points.push(p);
            }
            Membership::Boundary => {
                set.all_points.push(p.clone());
                set.boundary_points.push(p);
            }
            Membership::Outside => {}
        };
        match self.small_facets(&lo, &hi) {
            Some(small) => scan_small(&small, &lo, &hi, &mut push),
            None => scan_big(self, &lo, &hi, &mut push),
        }
        Ok(set)
    }

    fn bounding_box(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let lo = (0..self.dim).map(|k| self.vertices.iter().map(|v| &v[k]).min().unwrap().clone()).collect();
        let hi = (0..self.dim).map(|k| self.vertices.iter().map(|v| &v[k]).max().unwrap().clone()).collect();
        (lo, hi)
    }

    /// Facets as machine integers when everything fits comfortably in `i64`
    /// (products are then accumulated in `i128` without overflow).
    fn small_facets(&self, lo: &[BigInt], hi: &[BigInt]) -> Option<Vec<(Vec<i64>, i128)>> {
        let limit = BigInt::from(1i64 << 40);
        if self.dim > 64 || lo.iter().chain(hi).any(|x| x.abs() > limit) {
            return None;
        }
        self.facets
            .iter()
            .map(|h| {
                let n = h.normal.to_i64()?;
                if n.iter().any(|&x| x.unsigned_abs() > 1 << 40) {
                    return None;
                }
                Some((n, h.offset.to_i128()?))
            })
            .collect()
    }

    /// `d!` times the Euclidean volume: the sum of `|det|` over the cells of
    /// a placing triangulation of the vertices.
    pub fn normalized_volume(&self) -> BigInt {
        let cells = placing_triangulation(&self.vertices).expect("validated polytopes are full-dimensional");
        cells
            .iter()
            .map(|c| {
                let pts: Vec<&IntegerVector> = c.iter().map(|&i| &self.vertices[i]).collect();
                simplex_determinant(&pts).abs()
            })
            .sum()
    }

    /// True iff the only lattice points are the vertices.
    pub fn is_elementary(&self) -> Result<bool, PolytopeError> {
        Ok(self.lattice_points()?.all_points.len() == self.vertices.len())
    }

    /// A simplex of normalized volume one.
    pub fn is_basic_simplex(&self) -> bool {
        self.is_simplex() && self.normalized_volume().is_one()
    }
}

fn check_points(points: &[IntegerVector]) -> Result<usize, PolytopeError> {
    let first = points.first().ok_or(PolytopeError::Empty)?;
    let dim = first.dim();
    if dim == 0 {
        return Err(PolytopeError::ZeroDimensional);
    }
    if let Some((index, p)) = points.iter().enumerate().find(|(_, p)| p.dim() != dim) {
        return Err(PolytopeError::DimensionMismatch { index, expected: dim, found: p.dim() });
    }
    let mut seen = BTreeSet::new();
    if let Some(p) = points.iter().find(|p| !seen.insert(*p)) {
        return Err(PolytopeError::DuplicateVertex(p.clone()));
    }
    let rows: Vec<Vec<BigInt>> = points[1..].iter().map(|p| p.sub(first).into_entries()).collect();
    let affine_dim = if rows.is_empty() { 0 } else { rational::rank(&rows) };
    if affine_dim < dim {
        return Err(PolytopeError::NotFullDimensional { affine_dim, ambient_dim: dim });
    }
    Ok(dim)
}

/// Facet enumeration by brute force over affinely independent `d`-subsets:
/// a hyperplane through `d` points is a facet iff all points lie on one side.
fn facets_of(points: &[IntegerVector], dim: usize) -> Vec<HalfSpace> {
    let mut found = BTreeSet::new();
    for subset in (0..points.len()).combinations(dim) {
        let base = &points[subset[0]];
        let rows: Vec<Vec<BigInt>> = subset[1..].iter().map(|&i| points[i].sub(base).into_entries()).collect();
        let normal = IntegerVector::new(orthogonal_vector(&rows, dim)).expect("dim >= 1");
        if normal.is_zero() {
            continue;
        }
        let normal = primitive_part(&normal).expect("nonzero");
        let offset = normal.dot(base);
        let mut above = false;
        let mut below = false;
        for p in points {
            match normal.dot(p).cmp(&offset) {
                std::cmp::Ordering::Greater => above = true,
                std::cmp::Ordering::Less => below = true,
                std::cmp::Ordering::Equal => {}
            }
            if above && below {
                break;
            }
        }
        match (above, below) {
            (false, _) => {
                found.insert(HalfSpace { normal, offset });
            }
            (true, false) => {
                found.insert(HalfSpace { normal: normal.neg(), offset: -offset });
            }
            (true, true) => {}
        }
    }
    found.into_iter().collect()
}

/// A point of the hull is a vertex iff the normals of the facets through it
/// span the whole space.
fn is_vertex(v: &IntegerVector, facets: &[HalfSpace], dim: usize) -> bool {
    let tight: Vec<Vec<BigInt>> =
        facets.iter().filter(|h| h.slack(v).is_zero()).map(|h| h.normal.entries().to_vec()).collect();
    tight.len() >= dim && rational::rank(&tight) == dim
}

fn to_vector(x: &[i64]) -> IntegerVector {
    IntegerVector::from_i64(x)
}

fn scan_small(
    facets: &[(Vec<i64>, i128)],
    lo: &[BigInt],
    hi: &[BigInt],
    push: &mut impl FnMut(IntegerVector, Membership),
) {
    let lo: Vec<i64> = lo.iter().map(|x| x.to_i64().unwrap()).collect();
    let hi: Vec<i64> = hi.iter().map(|x| x.to_i64().unwrap()).collect();
    let mut x = lo.clone();
    loop {
        let mut tight = false;
        let mut outside = false;
        for (n, off) in facets {
            let s: i128 = n.iter().zip(&x).map(|(&a, &b)| a as i128 * b as i128).sum();
            match s.cmp(off) {
                std::cmp::Ordering::Greater => {
                    outside = true;
                    break;
                }
                std::cmp::Ordering::Equal => tight = true,
                std::cmp::Ordering::Less => {}
            }
        }
        if !outside {
            push(to_vector(&x), if tight { Membership::Boundary } else { Membership::Interior });
        }
        // Odometer with the last coordinate running fastest: lexicographic order.
        let mut k = x.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if x[k] < hi[k] {
                x[k] += 1;
                break;
            }
            x[k] = lo[k];
        }
    }
}

fn scan_big(
    poly: &LatticePolytope,
    lo: &[BigInt],
    hi: &[BigInt],
    push: &mut impl FnMut(IntegerVector, Membership),
) {
    let mut x: Vec<BigInt> = lo.to_vec();
    loop {
        let p = IntegerVector::new(x.clone()).expect("dim >= 1");
        let m = poly.contains(&p).expect("dimensions agree");
        push(p, m);
        let mut k = x.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if x[k] < hi[k] {
                x[k] += 1;
                break;
            }
            x[k] = lo[k].clone();
        }
    }
}

impl LatticePolytope {
    /// Image under `x -> U x + t`. Fails only if `U` is singular.
    pub fn affine_image(&self, u: &lattice::IntegerMatrix, t: &IntegerVector) -> Result<Self, PolytopeError> {
        Self::new(self.vertices.iter().map(|v| u.apply(v).add(t)).collect())
    }
}
