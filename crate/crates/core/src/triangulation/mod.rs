//! Lattice triangulations of lattice polytopes.
//!
//! A [`GeometricTriangulation`] is an indexed point list plus cells given as
//! sorted `(d + 1)`-subsets of indices. Faces are keyed by their sorted index
//! lists throughout.

mod search;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::fh::{FVector, FhError};
use crate::lattice::{lp, simplex_determinant, IntegerVector};
use crate::placing::{orientation, placing_triangulation};
use crate::polytope::{LatticePolytope, Membership, PolytopeError};

pub use search::{basic_triangulation_search, SearchOutcome, SearchReport, DEFAULT_SEARCH_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("triangulation is not well formed: {0}")]
    Malformed(TriangulationIssue),
    #[error("inconsistent classification: every cell is basic but the vertex set misses lattice points")]
    BasicNotMaximal,
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Fh(#[from] FhError),
}

/// One failed validity condition, with a concrete witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriangulationIssue {
    IndexOutOfRange { cell: usize, index: usize },
    WrongCellSize { cell: usize, size: usize },
    DimensionMismatch { point: usize },
    DegenerateCell { cell: usize },
    DuplicateCell { first: usize, second: usize },
    PointOutside { point: usize },
    VolumeMismatch { cells: BigInt, polytope: BigInt },
    ImproperIntersection { first: usize, second: usize },
}

impl fmt::Display for TriangulationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use TriangulationIssue::*;
        match self {
            IndexOutOfRange { cell, index } => write!(f, "cell {cell} refers to missing point {index}"),
            WrongCellSize { cell, size } => write!(f, "cell {cell} has {size} vertices"),
            DimensionMismatch { point } => write!(f, "point {point} has the wrong dimension"),
            DegenerateCell { cell } => write!(f, "cell {cell} is not full-dimensional"),
            DuplicateCell { first, second } => write!(f, "cells {first} and {second} coincide"),
            PointOutside { point } => write!(f, "point {point} lies outside the polytope"),
            VolumeMismatch { cells, polytope } => {
                write!(f, "cell volumes sum to {cells}, polytope volume is {polytope}")
            }
            ImproperIntersection { first, second } => {
                write!(f, "cells {first} and {second} do not meet in a common face")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricTriangulation {
    pub points: Vec<IntegerVector>,
    /// Each cell is a sorted list of point indices.
    pub cells: Vec<Vec<usize>>,
}

impl GeometricTriangulation {
    /// Sorts every cell's indices; does not validate.
    pub fn new(points: Vec<IntegerVector>, cells: Vec<Vec<usize>>) -> Self {
        let cells = cells
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        Self { points, cells }
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, IntegerVector::dim)
    }

    /// Indices of points that are vertices of some cell.
    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.cells.iter().flatten().copied().collect()
    }

    pub fn cell_volume(&self, cell: usize) -> BigInt {
        let pts: Vec<&IntegerVector> = self.cells[cell].iter().map(|&i| &self.points[i]).collect();
        simplex_determinant(&pts).abs()
    }

    /// Structural checks that need no polytope: index range, cell size,
    /// point dimensions, nondegeneracy.
    fn structural_issues(&self) -> Vec<TriangulationIssue> {
        let d = self.dim();
        let mut issues = Vec::new();
        for (point, p) in self.points.iter().enumerate() {
            if p.dim() != d {
                issues.push(TriangulationIssue::DimensionMismatch { point });
            }
        }
        if !issues.is_empty() {
            return issues;
        }
        for (ci, cell) in self.cells.iter().enumerate() {
            if cell.len() != d + 1 {
                issues.push(TriangulationIssue::WrongCellSize { cell: ci, size: cell.len() });
            } else if let Some(&index) = cell.iter().find(|&&i| i >= self.points.len()) {
                issues.push(TriangulationIssue::IndexOutOfRange { cell: ci, index });
            } else if self.cell_volume(ci).is_zero() {
                issues.push(TriangulationIssue::DegenerateCell { cell: ci });
            }
        }
        issues
    }

    fn ensure_well_formed(&self) -> Result<(), TriangulationError> {
        match self.structural_issues().into_iter().next() {
            Some(issue) => Err(TriangulationError::Malformed(issue)),
            None => Ok(()),
        }
    }
}

/// Outcome of [`validate_triangulation`]; empty `issues` means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidityReport {
    pub issues: Vec<TriangulationIssue>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

/// Checks that `t` triangulates `p`: full-dimensional cells with vertices
/// in `p`, volumes summing to the volume of `p`, and every pair of cells
/// meeting in a common face (tested exactly).
pub fn validate_triangulation(t: &GeometricTriangulation, p: &LatticePolytope) -> ValidityReport {
    let mut issues = t.structural_issues();
    if !issues.is_empty() || t.dim() != p.ambient_dim() {
        if t.dim() != p.ambient_dim() && issues.is_empty() {
            issues.push(TriangulationIssue::DimensionMismatch { point: 0 });
        }
        return ValidityReport { issues };
    }
    for point in t.vertex_set() {
        if p.contains(&t.points[point]).expect("dimensions checked") == Membership::Outside {
            issues.push(TriangulationIssue::PointOutside { point });
        }
    }
    let total: BigInt = (0..t.cells.len()).map(|c| t.cell_volume(c)).sum();
    let expected = p.normalized_volume();
    if total != expected {
        issues.push(TriangulationIssue::VolumeMismatch { cells: total, polytope: expected });
    }
    for (first, second) in (0..t.cells.len()).tuple_combinations() {
        if t.cells[first] == t.cells[second] {
            issues.push(TriangulationIssue::DuplicateCell { first, second });
        } else if !intersect_properly(&t.points, &t.cells[first], &t.cells[second]) {
            issues.push(TriangulationIssue::ImproperIntersection { first, second });
        }
    }
    ValidityReport { issues }
}

/// Whether two full-dimensional simplices meet exactly in the face spanned
/// by their common vertices (possibly empty).
pub(crate) fn intersect_properly(points: &[IntegerVector], a: &[usize], b: &[usize]) -> bool {
    if separated_by_facet(points, a, b) || separated_by_facet(points, b, a) {
        return true;
    }
    // Maximize the weight on the private vertices of `a` over the points
    // x = sum alpha_i a_i = sum beta_j b_j of the intersection.
    let d = points[a[0]].dim();
    let n = a.len() + b.len();
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    let mut rows: Vec<Vec<BigRational>> = (0..d)
        .map(|k| {
            a.iter()
                .map(|&i| q(&points[i][k]))
                .chain(b.iter().map(|&j| -q(&points[j][k])))
                .collect()
        })
        .collect();
    let mut rhs = vec![BigRational::zero(); d];
    let indicator = |first: bool| -> Vec<BigRational> {
        (0..n).map(|i| if (i < a.len()) == first { BigRational::one() } else { BigRational::zero() }).collect()
    };
    rows.push(indicator(true));
    rows.push(indicator(false));
    rhs.push(BigRational::one());
    rhs.push(BigRational::one());
    let objective: Vec<BigRational> = a
        .iter()
        .map(|i| if b.contains(i) { BigRational::zero() } else { BigRational::one() })
        .chain(std::iter::repeat_n(BigRational::zero(), b.len()))
        .collect();
    match lp::maximize(&rows, &rhs, &objective) {
        lp::LpOutcome::Infeasible => true,
        lp::LpOutcome::Optimal { value, .. } => value.is_zero(),
        lp::LpOutcome::Unbounded => unreachable!("weights are bounded by 1"),
    }
}

/// Sufficient test: some facet hyperplane of `a` through all shared vertices
/// has every private vertex of `b` strictly on the far side.
fn separated_by_facet(points: &[IntegerVector], a: &[usize], b: &[usize]) -> bool {
    let private_b: Vec<usize> = b.iter().copied().filter(|i| !a.contains(i)).collect();
    if private_b.is_empty() {
        return false;
    }
    a.iter().filter(|i| !b.contains(i)).any(|&apex| {
        let face: Vec<&IntegerVector> = a.iter().filter(|&&i| i != apex).map(|&i| &points[i]).collect();
        let inside = orientation(&face, &points[apex]);
        private_b.iter().all(|&j| orientation(&face, &points[j]) == -inside)
    })
}

/// Face counts of the triangulation as a `d`-dimensional complex.
pub fn f_vector_of(t: &GeometricTriangulation) -> Result<FVector, TriangulationError> {
    t.ensure_well_formed()?;
    let d = t.dim();
    let mut faces: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); d + 1];
    for cell in &t.cells {
        for size in 1..=cell.len() {
            for face in cell.iter().copied().combinations(size) {
                faces[size - 1].insert(face);
            }
        }
    }
    let counts = std::iter::once(BigInt::one()).chain(faces.iter().map(|s| BigInt::from(s.len()))).collect();
    Ok(FVector::new(d as i64, counts)?)
}

/// The `(d-1)`-faces that lie in exactly one cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryComplex {
    pub complex_dim: i64,
    pub facets: Vec<Vec<usize>>,
}

impl BoundaryComplex {
    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.facets.iter().flatten().copied().collect()
    }

    pub fn f_vector(&self) -> Result<FVector, FhError> {
        let size = (self.complex_dim + 1) as usize;
        let mut faces: Vec<BTreeSet<Vec<usize>>> = vec![BTreeSet::new(); size];
        for facet in &self.facets {
            for k in 1..=facet.len() {
                for face in facet.iter().copied().combinations(k) {
                    faces[k - 1].insert(face);
                }
            }
        }
        let counts = std::iter::once(BigInt::one()).chain(faces.iter().map(|s| BigInt::from(s.len()))).collect();
        FVector::new(self.complex_dim, counts)
    }

    /// Every ridge of the boundary lies in exactly two boundary facets.
    pub fn is_pseudomanifold(&self) -> bool {
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for facet in &self.facets {
            for skip in 0..facet.len() {
                let ridge: Vec<usize> =
                    facet.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                *ridges.entry(ridge).or_default() += 1;
            }
        }
        !self.facets.is_empty() && ridges.values().all(|&c| c == 2)
    }
}

pub fn boundary_of(t: &GeometricTriangulation) -> Result<BoundaryComplex, TriangulationError> {
    t.ensure_well_formed()?;
    let mut incidence: HashMap<Vec<usize>, usize> = HashMap::new();
    for cell in &t.cells {
        for skip in 0..cell.len() {
            let face: Vec<usize> = cell.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
            *incidence.entry(face).or_default() += 1;
        }
    }
    let mut facets: Vec<Vec<usize>> = incidence.into_iter().filter(|&(_, c)| c == 1).map(|(f, _)| f).collect();
    facets.sort();
    Ok(BoundaryComplex { complex_dim: t.dim() as i64 - 1, facets })
}

/// True iff the vertices of `t` are exactly the lattice points of `p`.
pub fn is_maximal(t: &GeometricTriangulation, p: &LatticePolytope) -> Result<bool, TriangulationError> {
    let lattice: BTreeSet<IntegerVector> = p.lattice_points()?.all_points.into_iter().collect();
    let used: BTreeSet<IntegerVector> = t.vertex_set().into_iter().map(|i| t.points[i].clone()).collect();
    Ok(lattice == used)
}

/// True iff every cell has normalized volume one.
pub fn is_basic(t: &GeometricTriangulation) -> bool {
    (0..t.cells.len()).all(|c| t.cell_volume(c).is_one())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellClassification {
    pub maximal: bool,
    pub basic: bool,
}

/// Both predicates together, with the implication basic => maximal checked.
pub fn classify_cells(t: &GeometricTriangulation, p: &LatticePolytope) -> Result<CellClassification, TriangulationError> {
    let maximal = is_maximal(t, p)?;
    let basic = is_basic(t);
    if basic && !maximal {
        return Err(TriangulationError::BasicNotMaximal);
    }
    Ok(CellClassification { maximal, basic })
}

/// A placing triangulation using every lattice point of `p`, inserted in
/// lexicographic order. Always maximal.
pub fn full_triangulation(p: &LatticePolytope) -> Result<GeometricTriangulation, TriangulationError> {
    full_triangulation_with_budget(p, crate::polytope::DEFAULT_POINT_BUDGET)
}

pub fn full_triangulation_with_budget(
    p: &LatticePolytope,
    point_budget: u64,
) -> Result<GeometricTriangulation, TriangulationError> {
    let points = p.lattice_points_with_budget(point_budget)?.all_points;
    let cells = placing_triangulation(&points).expect("lattice points of a full-dimensional polytope span it");
    Ok(GeometricTriangulation::new(points, cells))
}
