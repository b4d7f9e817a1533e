//! Rational polyhedral cones, the Gorenstein certificate, and the passage
//! between Gorenstein cones and their support polytopes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::lattice::{
    self, gcd_content, hyperplane_lattice_basis, lp, primitive_part, rational, IntegerMatrix, IntegerVector,
    LatticeError,
};
use crate::polytope::{LatticePolytope, PolytopeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("a cone needs at least one ray")]
    NoRays,
    #[error("ray {0} is the zero vector")]
    ZeroRay(usize),
    #[error("ray {index} has dimension {found}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("cone contains the line spanned by {0}")]
    ContainsLine(IntegerVector),
    #[error("rays span a {rank}-dimensional subspace of R^{dim}")]
    NotFullDimensional { rank: usize, dim: usize },
    #[error("ray {0} is not a minimal generator of the cone")]
    RedundantGenerator(IntegerVector),
    #[error("certificate {0} does not evaluate to 1 on every ray")]
    CertificateMismatch(IntegerVector),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

/// A full-dimensional, strongly convex cone given by primitive rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    dim: usize,
    rays: Vec<IntegerVector>,
}

impl Cone {
    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[IntegerVector] {
        &self.rays
    }
}

/// Replaces every ray by its primitive part, drops repeats, and checks that
/// the result is strongly convex and full-dimensional.
pub fn make_cone(raw_rays: &[IntegerVector]) -> Result<Cone, ConeError> {
    let first = raw_rays.first().ok_or(ConeError::NoRays)?;
    let dim = first.dim();
    let mut seen = BTreeSet::new();
    let mut rays = Vec::new();
    for (index, r) in raw_rays.iter().enumerate() {
        if r.dim() != dim {
            return Err(ConeError::DimensionMismatch { index, expected: dim, found: r.dim() });
        }
        let p = primitive_part(r).map_err(|_| ConeError::ZeroRay(index))?;
        if seen.insert(p.clone()) {
            rays.push(p);
        }
    }
    // The cone contains a line iff the negation of some generator is in it.
    let gens: Vec<&[BigInt]> = rays.iter().map(IntegerVector::entries).collect();
    if let Some(r) = rays.iter().find(|r| lp::in_cone(&gens, r.neg().entries())) {
        return Err(ConeError::ContainsLine(r.clone()));
    }
    let rows: Vec<Vec<BigInt>> = rays.iter().map(|r| r.entries().to_vec()).collect();
    let rank = rational::rank(&rows);
    if rank < dim {
        return Err(ConeError::NotFullDimensional { rank, dim });
    }
    Ok(Cone { dim, rays })
}

/// The primitive dual vector `m` with `<m, r> = 1` on every ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinCertificate {
    pub m_sigma: IntegerVector,
}

impl GorensteinCertificate {
    pub fn certifies(&self, cone: &Cone) -> bool {
        cone.rays.iter().all(|r| self.m_sigma.dot(r).is_one())
    }
}

/// Why a cone has no Gorenstein certificate.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NotGorenstein {
    #[error("the rays do not lie on a common affine hyperplane <m, x> = 1")]
    NoSolution,
    #[error("the hyperplane through the rays has non-integral normal {0:?}")]
    NonIntegral(Vec<BigRational>),
    #[error("the hyperplane normal {0} is not primitive")]
    NonPrimitive(IntegerVector),
}

/// Solves `<m, r> = 1` exactly over all rays.
pub fn gorenstein_vector(cone: &Cone) -> Result<GorensteinCertificate, NotGorenstein> {
    let rows: Vec<Vec<BigInt>> = cone.rays.iter().map(|r| r.entries().to_vec()).collect();
    let ones = vec![BigInt::one(); rows.len()];
    let solution = match rational::solve(&rows, &ones) {
        rational::Solution::Unique(x) => x,
        // Full-dimensional cones give a system of full column rank.
        rational::Solution::Underdetermined(_) | rational::Solution::Inconsistent => {
            return Err(NotGorenstein::NoSolution)
        }
    };
    if !solution.iter().all(BigRational::is_integer) {
        return Err(NotGorenstein::NonIntegral(solution));
    }
    let m = IntegerVector::new(solution.iter().map(BigRational::to_integer).collect())
        .expect("cone dimension is positive");
    if !gcd_content(&m).is_one() {
        return Err(NotGorenstein::NonPrimitive(m));
    }
    Ok(GorensteinCertificate { m_sigma: m })
}

/// Lattice coordinates on the hyperplane `<m, x> = 1`.
///
/// `flatten` sends `base_point + sum y_i basis_i` to `y`; `lift` inverts it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flattening {
    pub m_sigma: IntegerVector,
    pub base_point: IntegerVector,
    pub basis: Vec<IntegerVector>,
    /// Rows `i >= 1` of the inverse of `[base_point | basis]`.
    coordinate_rows: Vec<IntegerVector>,
}

impl Flattening {
    /// Checks that `base_point` lies on the hyperplane and that
    /// `[base_point | basis]` is unimodular.
    pub fn new(m_sigma: IntegerVector, base_point: IntegerVector, basis: Vec<IntegerVector>) -> Result<Self, ConeError> {
        if !m_sigma.dot(&base_point).is_one() || basis.iter().any(|b| !m_sigma.dot(b).is_zero()) {
            return Err(ConeError::CertificateMismatch(m_sigma));
        }
        let mut cols = vec![base_point.clone()];
        cols.extend(basis.iter().cloned());
        let u = IntegerMatrix::from_rows(&cols)?.transpose();
        let inverse = lattice::unimodular_inverse(&u)?;
        let coordinate_rows = inverse.row_vectors().into_iter().skip(1).collect();
        Ok(Self { m_sigma, base_point, basis, coordinate_rows })
    }

    pub fn from_certificate(cert: &GorensteinCertificate) -> Result<Self, ConeError> {
        let hb = hyperplane_lattice_basis(&cert.m_sigma)?;
        Self::new(cert.m_sigma.clone(), hb.base_point, hb.basis)
    }

    /// Coordinates of a lattice point on the hyperplane.
    pub fn flatten(&self, x: &IntegerVector) -> IntegerVector {
        debug_assert!(self.m_sigma.dot(x).is_one());
        IntegerVector::new(self.coordinate_rows.iter().map(|r| r.dot(x)).collect()).expect("d >= 1")
    }

    pub fn lift(&self, y: &IntegerVector) -> IntegerVector {
        self.basis.iter().zip(y.entries()).fold(self.base_point.clone(), |acc, (b, c)| acc.add(&b.scale(c)))
    }
}

/// The support polytope `{x in cone : <m, x> = 1}` in lattice coordinates
/// on the hyperplane, together with the coordinate map.
pub fn support_polytope(
    cone: &Cone,
    cert: &GorensteinCertificate,
) -> Result<(LatticePolytope, Flattening), ConeError> {
    support_polytope_with(cone, cert, Flattening::from_certificate(cert)?)
}

/// As [`support_polytope`], but with caller-chosen hyperplane coordinates.
pub fn support_polytope_with(
    cone: &Cone,
    cert: &GorensteinCertificate,
    flattening: Flattening,
) -> Result<(LatticePolytope, Flattening), ConeError> {
    if !cert.certifies(cone) || flattening.m_sigma != cert.m_sigma {
        return Err(ConeError::CertificateMismatch(cert.m_sigma.clone()));
    }
    let images: Vec<IntegerVector> = cone.rays.iter().map(|r| flattening.flatten(r)).collect();
    let poly = LatticePolytope::new(images).map_err(|e| match e {
        PolytopeError::RedundantPoint(y) => ConeError::RedundantGenerator(flattening.lift(&y)),
        other => ConeError::Polytope(other),
    })?;
    Ok((poly, flattening))
}

/// The cone over `P` placed at height one: rays `(1, v)` for each vertex.
pub fn cone_over_polytope(p: &LatticePolytope) -> Cone {
    let rays = p
        .vertices()
        .iter()
        .map(|v| {
            let mut e = vec![BigInt::one()];
            e.extend(v.entries().iter().cloned());
            IntegerVector::new(e).expect("nonempty")
        })
        .collect();
    Cone { dim: p.ambient_dim() + 1, rays }
}
