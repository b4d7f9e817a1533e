//! Face numbers of pure simplicial complexes.
//!
//! Index conventions are the usual source of off-by-one bugs here, so both
//! vector types carry the dimension `D` of the complex they describe:
//! an [`FVector`] stores `f_{-1} ..= f_D` and an [`HVector`] stores
//! `h_0 ..= h_{D+1}`. Below, `d = D + 1` is the number of vertices of a
//! facet, matching the "`(d-1)`-complex with `h_0 .. h_d`" convention.
//!
//! Boundary complexes of `P`-dimensional polytopes have `D = P - 1`; a
//! triangulated `D`-ball has `D` equal to the ball's dimension.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FhError {
    #[error("expected {expected} entries for a {complex_dim}-dimensional complex, got {found}")]
    LengthMismatch { complex_dim: i64, expected: usize, found: usize },
    #[error("f_{{-1}} must be 1, got {0}")]
    EmptyFaceCount(BigInt),
    #[error("face counts must be non-negative")]
    NegativeCount,
    #[error("a {poly_dim}-polytope needs at least {} vertices, got {vertices}", poly_dim + 1)]
    TooFewVertices { poly_dim: i64, vertices: i64 },
    #[error("complex dimension must be at least -1")]
    BadDimension,
    #[error("boundary h-vector has complex dimension {boundary}, ball has {ball}")]
    BoundaryMismatch { ball: i64, boundary: i64 },
}

/// Binomial coefficient with `C(n, k) = 0` whenever `k < 0` or `n < k`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `f_{-1} ..= f_D` of a `D`-dimensional complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector {
    complex_dim: i64,
    counts: Vec<BigInt>,
}

impl FVector {
    /// `counts` starts with `f_{-1}`, which must be 1.
    pub fn new(complex_dim: i64, counts: Vec<BigInt>) -> Result<Self, FhError> {
        if complex_dim < -1 {
            return Err(FhError::BadDimension);
        }
        let expected = (complex_dim + 2) as usize;
        if counts.len() != expected {
            return Err(FhError::LengthMismatch { complex_dim, expected, found: counts.len() });
        }
        if !counts[0].is_one() {
            return Err(FhError::EmptyFaceCount(counts[0].clone()));
        }
        if counts.iter().any(Signed::is_negative) {
            return Err(FhError::NegativeCount);
        }
        Ok(Self { complex_dim, counts })
    }

    /// From `f_0 ..= f_D`; `f_{-1} = 1` is prepended.
    pub fn from_faces(counts: &[i64]) -> Result<Self, FhError> {
        let all = std::iter::once(BigInt::one()).chain(counts.iter().map(|&c| BigInt::from(c))).collect();
        Self::new(counts.len() as i64 - 1, all)
    }

    pub fn complex_dim(&self) -> i64 {
        self.complex_dim
    }

    /// `f_i` for `-1 <= i <= D`; zero outside that range.
    pub fn f(&self, i: i64) -> BigInt {
        if i < -1 || i > self.complex_dim {
            return BigInt::zero();
        }
        self.counts[(i + 1) as usize].clone()
    }

    /// All counts, starting with `f_{-1}`.
    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    pub fn vertices(&self) -> BigInt {
        self.f(0)
    }

    pub fn top(&self) -> BigInt {
        self.f(self.complex_dim)
    }
}

/// `h_0 ..= h_{D+1}` of a `D`-dimensional complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HVector {
    complex_dim: i64,
    entries: Vec<BigInt>,
}

impl HVector {
    pub fn new(complex_dim: i64, entries: Vec<BigInt>) -> Result<Self, FhError> {
        if complex_dim < -1 {
            return Err(FhError::BadDimension);
        }
        let expected = (complex_dim + 2) as usize;
        if entries.len() != expected {
            return Err(FhError::LengthMismatch { complex_dim, expected, found: entries.len() });
        }
        Ok(Self { complex_dim, entries })
    }

    pub fn from_i64(complex_dim: i64, entries: &[i64]) -> Result<Self, FhError> {
        Self::new(complex_dim, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn complex_dim(&self) -> i64 {
        self.complex_dim
    }

    /// `h_i` for `0 <= i <= D + 1`; zero outside that range.
    pub fn h(&self, i: i64) -> BigInt {
        if i < 0 || i > self.complex_dim + 1 {
            return BigInt::zero();
        }
        self.entries[i as usize].clone()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// `h_j = h_{d-j}` for all `j`.
    pub fn is_palindromic(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|j| self.entries[j] == self.entries[n - 1 - j])
    }
}

/// `h_j = sum_{i=0}^{j} (-1)^{j-i} C(d-i, d-j) f_{i-1}` with `d = D + 1`.
pub fn h_from_f(f: &FVector) -> HVector {
    let d = f.complex_dim + 1;
    let entries = (0..=d)
        .map(|j| {
            (0..=j).fold(BigInt::zero(), |acc, i| {
                let term = binomial(d - i, d - j) * f.f(i - 1);
                if (j - i) % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect();
    HVector { complex_dim: f.complex_dim, entries }
}

/// Inverse transform: `f_i = sum_{j=0}^{i+1} C(d-j, d-1-i) h_j` with `d = D + 1`.
pub fn f_from_h(h: &HVector) -> Result<FVector, FhError> {
    let d = h.complex_dim + 1;
    let counts = (-1..d).map(|i| (0..=i + 1).map(|j| binomial(d - j, d - 1 - i) * h.h(j)).sum()).collect();
    FVector::new(h.complex_dim, counts)
}

fn check_cyclic(poly_dim: i64, k: i64) -> Result<(), FhError> {
    if poly_dim < 1 || k < poly_dim + 1 {
        return Err(FhError::TooFewVertices { poly_dim, vertices: k });
    }
    Ok(())
}

/// The closed form for the number of facets of the cyclic `D`-polytope with
/// `k` vertices, evaluated without checking that such a polytope exists.
pub(crate) fn cyclic_facet_formula(poly_dim: i64, k: i64) -> BigInt {
    let (ceil_d, floor_d) = ((poly_dim + 1) / 2, poly_dim / 2);
    let (ceil_d1, floor_d1) = (poly_dim / 2, (poly_dim - 1) / 2);
    binomial(k - ceil_d, floor_d) + binomial(k - 1 - ceil_d1, floor_d1)
}

/// Number of facets of the cyclic `poly_dim`-polytope with `k` vertices.
pub fn cyclic_facets(poly_dim: i64, k: i64) -> Result<BigInt, FhError> {
    check_cyclic(poly_dim, k)?;
    Ok(cyclic_facet_formula(poly_dim, k))
}

/// h-vector of the boundary complex of the cyclic `poly_dim`-polytope with
/// `k` vertices: `h_i = C(k - D + i - 1, i)` up to the middle, then mirrored.
pub fn cyclic_h(poly_dim: i64, k: i64) -> Result<HVector, FhError> {
    check_cyclic(poly_dim, k)?;
    let entries = (0..=poly_dim)
        .map(|i| {
            let i = if i > poly_dim / 2 { poly_dim - i } else { i };
            binomial(k - poly_dim + i - 1, i)
        })
        .collect();
    HVector::new(poly_dim - 1, entries)
}

/// Full f-vector of the cyclic polytope's boundary complex, via [`f_from_h`].
pub fn cyclic_f(poly_dim: i64, k: i64) -> Result<FVector, FhError> {
    f_from_h(&cyclic_h(poly_dim, k)?)
}

/// Upper Bound Theorem for a simplicial `(d-1)`-sphere with `k` vertices:
/// entry `i` says whether `f_i <= f_i(CycP_d(k))`, for `0 <= i <= d - 1`.
pub fn ubt_sphere_check(f: &FVector, k: i64) -> Result<Vec<bool>, FhError> {
    let d = f.complex_dim + 1;
    let cyc = cyclic_f(d, k)?;
    Ok((0..d).map(|i| f.f(i) <= cyc.f(i)).collect())
}

/// Lower Bound Theorem inequalities `h_1 <= h_i`, evaluated literally over
/// `2 <= i <= d` where `h` has entries `h_0 ..= h_d`.
pub fn lbt_sphere_check(h: &HVector) -> bool {
    let d = h.complex_dim + 1;
    let h1 = h.h(1);
    (2..=d).all(|i| h1 <= h.h(i))
}

/// The single consequence of the Lower Bound Theorem used for balls:
/// `h_1 <= h_{floor(d/2)}`.
pub fn lbt_middle_check(h: &HVector) -> bool {
    let d = h.complex_dim + 1;
    h.h(1) <= h.h(d / 2)
}

/// Per-index residual of
/// `h_{i-1}(bd S) - h_i(bd S) = h_{(D+1)-i}(S) - h_i(S)` for `0 <= i <= D + 1`,
/// where `S` is a `D`-ball. All zeros iff the identity holds.
pub fn boundary_h_residual(h_ball: &HVector, h_bd: &HVector) -> Result<Vec<BigInt>, FhError> {
    let dd = h_ball.complex_dim;
    if h_bd.complex_dim != dd - 1 {
        return Err(FhError::BoundaryMismatch { ball: dd, boundary: h_bd.complex_dim });
    }
    Ok((0..=dd + 1)
        .map(|i| (h_bd.h(i - 1) - h_bd.h(i)) - (h_ball.h(dd + 1 - i) - h_ball.h(i)))
        .collect())
}

/// Right-hand side of Schenzel's bound for a `D`-dimensional Buchsbaum
/// complex with `b` vertices:
/// `C(b - D + i - 2, i) - (-1)^i C(D + 1, i) sum_{j=-1}^{i-2} (-1)^j beta_j`.
///
/// `betti[0]` is the dimension of reduced homology in degree `-1`,
/// `betti[1]` in degree 0, and so on; missing entries count as zero.
pub fn schenzel_h_bound(i: i64, b: i64, complex_dim: i64, betti: &[i64]) -> BigInt {
    let dd = complex_dim;
    let alternating: i64 = (-1..=i - 2)
        .map(|j| {
            let beta = betti.get((j + 1) as usize).copied().unwrap_or(0);
            if j.rem_euclid(2) == 0 {
                beta
            } else {
                -beta
            }
        })
        .sum();
    let correction = binomial(dd + 1, i) * BigInt::from(alternating);
    let head = binomial(b - dd + i - 2, i);
    if i % 2 == 0 {
        head - correction
    } else {
        head + correction
    }
}

/// Upper bound on `f_i` of a simplicial `D`-ball with `b` vertices:
/// `f_i(CycP_{D+1}(b)) - sum_{j=D-i}^{floor(D/2)} C(j, D-i) (h_j(bd) - h_{j-1}(bd))`.
pub fn ball_f_upper_bound(i: i64, b: i64, complex_dim: i64, h_bd: &HVector) -> Result<BigInt, FhError> {
    let dd = complex_dim;
    if h_bd.complex_dim != dd - 1 {
        return Err(FhError::BoundaryMismatch { ball: dd, boundary: h_bd.complex_dim });
    }
    let cyc = cyclic_f(dd + 1, b)?;
    let correction: BigInt =
        (dd - i..=dd / 2).map(|j| binomial(j, dd - i) * (h_bd.h(j) - h_bd.h(j - 1))).sum();
    Ok(cyc.f(i) - correction)
}

/// Upper bound on the number of facets of a simplicial `D`-ball with `b`
/// vertices, `b_prime` of them on the boundary:
/// `f_D(CycP_{D+1}(b)) - (b_prime - D)`.
///
/// When `b = D + 1` there is no cyclic `(D+1)`-polytope; the facet-count
/// closed form is then evaluated as is.
pub fn ball_facet_upper_bound(b: i64, b_prime: i64, complex_dim: i64) -> Result<BigInt, FhError> {
    let dd = complex_dim;
    if dd < 1 || b_prime < dd + 1 {
        return Err(FhError::TooFewVertices { poly_dim: dd, vertices: b_prime });
    }
    if b < b_prime {
        return Err(FhError::TooFewVertices { poly_dim: dd + 1, vertices: b });
    }
    Ok(cyclic_facet_formula(dd + 1, b) - BigInt::from(b_prime - dd))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Direct substitution into the h-from-f sum, written independently
    /// with plain integers.
    fn h_oracle(f_with_empty: &[i64]) -> Vec<i64> {
        fn c(n: i64, k: i64) -> i64 {
            if k < 0 || n < k {
                return 0;
            }
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        let d = f_with_empty.len() as i64 - 1;
        (0..=d)
            .map(|j| (0..=j).map(|i| (-1i64).pow((j - i) as u32) * c(d - i, d - j) * f_with_empty[i as usize]).sum())
            .collect()
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn h_vectors_of_small_complexes() {
        let triangle_bd = FVector::from_faces(&[3, 3]).unwrap();
        assert_eq!(h_from_f(&triangle_bd).entries(), big(&h_oracle(&[1, 3, 3])).as_slice());
        assert_eq!(h_from_f(&triangle_bd).entries(), big(&[1, 1, 1]).as_slice());

        let triangle = FVector::from_faces(&[3, 3, 1]).unwrap();
        assert_eq!(h_from_f(&triangle).entries(), big(&[1, 0, 0, 0]).as_slice());

        let octahedron = FVector::from_faces(&[6, 12, 8]).unwrap();
        let h = h_from_f(&octahedron);
        assert_eq!(h.entries(), big(&h_oracle(&[1, 6, 12, 8])).as_slice());
        assert_eq!(h.entries(), big(&[1, 3, 3, 1]).as_slice());
        assert_eq!(h.entries().iter().sum::<BigInt>(), octahedron.top());
    }

    #[test]
    fn fvector_validation() {
        assert!(matches!(FVector::new(1, big(&[2, 3, 3])), Err(FhError::EmptyFaceCount(_))));
        assert!(matches!(FVector::new(2, big(&[1, 3, 3])), Err(FhError::LengthMismatch { .. })));
        assert!(matches!(FVector::new(1, big(&[1, -3, 3])), Err(FhError::NegativeCount)));
    }

    #[test]
    fn cyclic_counts() {
        assert_eq!(cyclic_facets(4, 8).unwrap(), BigInt::from(20));
        assert_eq!(cyclic_facets(3, 6).unwrap(), BigInt::from(8));
        for k in 3..12 {
            assert_eq!(cyclic_facets(2, k).unwrap(), BigInt::from(k));
        }
        assert!(cyclic_facets(3, 3).is_err());

        // h_1 = k - D = 4; the entries sum to the facet count 20.
        assert_eq!(cyclic_h(4, 8).unwrap().entries(), big(&[1, 4, 10, 4, 1]).as_slice());
        assert_eq!(cyclic_h(2, 5).unwrap(), h_from_f(&FVector::from_faces(&[5, 5]).unwrap()));
        for d in 2..8 {
            let h = cyclic_h(d, d + 1).unwrap();
            assert!(h.entries().iter().all(One::is_one), "simplex boundary h = (1, .., 1)");
        }
        assert_eq!(cyclic_f(3, 6).unwrap().counts(), big(&[1, 6, 12, 8]).as_slice());
    }

    #[test]
    fn upper_bound_theorem_checks() {
        let octahedron = FVector::from_faces(&[6, 12, 8]).unwrap();
        assert_eq!(ubt_sphere_check(&octahedron, 6).unwrap(), vec![true, true, true]);
        let simplex_bd = FVector::from_faces(&[4, 6, 4]).unwrap();
        assert_eq!(ubt_sphere_check(&simplex_bd, 4).unwrap(), vec![true, true, true]);
        assert_eq!(cyclic_f(3, 4).unwrap(), simplex_bd);
        let fake = FVector::from_faces(&[6, 13, 9]).unwrap();
        assert_eq!(ubt_sphere_check(&fake, 6).unwrap(), vec![true, false, false]);
    }

    #[test]
    fn lower_bound_theorem_checks() {
        let oct = HVector::from_i64(2, &[1, 3, 3, 1]).unwrap();
        // Literal range 2..=d includes h_3 = 1 < 3.
        assert!(!lbt_sphere_check(&oct));
        assert!(lbt_middle_check(&oct));
        assert!(lbt_sphere_check(&HVector::from_i64(2, &[1, 1, 1, 1]).unwrap()));
        let bad = HVector::from_i64(2, &[1, 5, 2, 1]).unwrap();
        assert!(!lbt_sphere_check(&bad));
    }

    #[test]
    fn boundary_residuals() {
        let ball = HVector::from_i64(2, &[1, 0, 0, 0]).unwrap();
        let bd = HVector::from_i64(1, &[1, 1, 1]).unwrap();
        assert_eq!(boundary_h_residual(&ball, &bd).unwrap(), big(&[0, 0, 0, 0]));

        // Two triangles sharing an edge, boundary a 4-cycle.
        let ball = h_from_f(&FVector::from_faces(&[4, 5, 2]).unwrap());
        let bd = h_from_f(&FVector::from_faces(&[4, 4]).unwrap());
        assert!(boundary_h_residual(&ball, &bd).unwrap().iter().all(Zero::is_zero));

        // Wrong boundary: a pentagon is not the boundary of this ball.
        let wrong = h_from_f(&FVector::from_faces(&[5, 5]).unwrap());
        assert!(boundary_h_residual(&ball, &wrong).unwrap().iter().any(|r| !r.is_zero()));
        assert!(boundary_h_residual(&ball, &ball).is_err());
    }

    #[test]
    fn schenzel_bound() {
        // Trivial homology: C(b - D + i - 2, i), which is h_i of the cyclic
        // (D+1)-polytope with b vertices.
        let (b, dd) = (9, 3);
        let cyc = cyclic_h(dd + 1, b).unwrap();
        for i in 0..=(dd + 1) / 2 {
            assert_eq!(schenzel_h_bound(i, b, dd, &[]), binomial(b - dd + i - 2, i));
            assert_eq!(schenzel_h_bound(i, b, dd, &[0, 0, 0]), cyc.h(i));
        }
        assert_eq!(schenzel_h_bound(0, b, dd, &[5, 5]), BigInt::one());
        assert_eq!(schenzel_h_bound(1, b, dd, &[0, 7]), BigInt::from(b - dd - 1));
        // Nonzero H_{-1}: i = 1 picks up + C(D+1, 1) * beta_{-1} * (-1)^{-1} * (-1).
        assert_eq!(schenzel_h_bound(1, b, dd, &[1]), BigInt::from(b - dd - 1 - (dd + 1)));
    }

    #[test]
    fn ball_bounds() {
        // At i = D the sum telescopes to h_{floor(D/2)}(bd).
        let bd = HVector::from_i64(2, &[1, 4, 4, 1]).unwrap();
        for b in 7..12 {
            let at_top = ball_f_upper_bound(3, b, 3, &bd).unwrap();
            assert_eq!(at_top, cyclic_facets(4, b).unwrap() - bd.h(1));
        }
        // Two triangles: f = (4, 5, 2), boundary a 4-cycle.
        let bd = h_from_f(&FVector::from_faces(&[4, 4]).unwrap());
        let f = [4, 5, 2];
        for (i, &fi) in f.iter().enumerate() {
            assert!(ball_f_upper_bound(i as i64, 4, 2, &bd).unwrap() >= BigInt::from(fi));
        }
        // i = 0 in dimension 4: D - i = 4 > floor(4/2), empty correction.
        let bd4 = HVector::from_i64(3, &[1, 2, 2, 2, 1]).unwrap();
        assert_eq!(ball_f_upper_bound(0, 9, 4, &bd4).unwrap(), cyclic_f(5, 9).unwrap().f(0));
    }

    #[test]
    fn ball_facet_bounds() {
        assert_eq!(ball_facet_upper_bound(8, 4, 3).unwrap(), BigInt::from(19));
        assert_eq!(ball_facet_upper_bound(6, 6, 2).unwrap(), BigInt::from(4));
        for dd in 1..8 {
            let bound = ball_facet_upper_bound(dd + 1, dd + 1, dd).unwrap();
            assert_eq!(bound, cyclic_facet_formula(dd + 1, dd + 1) - 1);
            assert!(bound >= BigInt::one(), "a single simplex must satisfy the bound");
        }
        assert!(ball_facet_upper_bound(8, 3, 3).is_err());
        assert!(ball_facet_upper_bound(4, 5, 3).is_err());
    }

    #[test]
    fn cyclic_top_entry_matches_closed_form() {
        for dd in 2..=10 {
            for k in dd + 1..=20 {
                assert_eq!(cyclic_f(dd, k).unwrap().top(), cyclic_facets(dd, k).unwrap(), "D={dd} k={k}");
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn h_f_round_trip(counts in prop::collection::vec(0i64..200, 1..8)) {
                let f = FVector::from_faces(&counts).unwrap();
                prop_assert_eq!(f_from_h(&h_from_f(&f)).unwrap(), f);
            }
        }
    }
}
