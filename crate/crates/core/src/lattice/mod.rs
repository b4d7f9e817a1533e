//! Arbitrary-precision integer linear algebra.
//!
//! Everything downstream (polytopes, cones, triangulations) is built on the
//! two carriers defined here, [`IntegerVector`] and [`IntegerMatrix`]. No
//! floating point is used anywhere in the crate.

pub mod lp;
pub mod rational;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("vector must have at least one entry")]
    EmptyVector,
    #[error("zero vector does not span a ray")]
    DegenerateRay,
    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },
    #[error("rows have inconsistent lengths ({expected} vs {found})")]
    RaggedRows { expected: usize, found: usize },
    #[error("determinant needs a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dual vector {0} is not primitive; <m, x> = 1 has no integral solution")]
    NotPrimitive(IntegerVector),
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
}

/// An exact integer vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerVector(Vec<BigInt>);

impl IntegerVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self, LatticeError> {
        if entries.is_empty() {
            return Err(LatticeError::EmptyVector);
        }
        Ok(Self(entries))
    }

    /// Convenience constructor from machine integers.
    ///
    /// Panics if `entries` is empty.
    pub fn from_i64(entries: &[i64]) -> Self {
        assert!(!entries.is_empty(), "IntegerVector needs at least one entry");
        Self(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![BigInt::zero(); dim])
    }

    /// The `i`-th standard basis vector of `Z^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = BigInt::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntegerVector) -> BigInt {
        dot(&self.0, &other.0)
    }

    pub fn add(&self, other: &IntegerVector) -> IntegerVector {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntegerVector) -> IntegerVector {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> IntegerVector {
        Self(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> IntegerVector {
        Self(self.0.iter().map(|a| -a).collect())
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl fmt::Display for IntegerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl std::ops::Index<usize> for IntegerVector {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

pub(crate) fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A rectangular row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LatticeError> {
        if entries.len() != rows * cols {
            return Err(LatticeError::ShapeMismatch { rows, cols, len: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        Self { rows: n, cols: n, entries }
    }

    pub fn from_rows(rows: &[IntegerVector]) -> Result<Self, LatticeError> {
        Self::from_row_slices(rows.iter().map(IntegerVector::entries))
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, LatticeError> {
        let owned: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_row_slices(owned.iter().map(Vec::as_slice))
    }

    pub(crate) fn from_row_slices<'a, I>(rows: I) -> Result<Self, LatticeError>
    where
        I: IntoIterator<Item = &'a [BigInt]>,
    {
        let mut entries = Vec::new();
        let mut cols = None;
        let mut count = 0;
        for row in rows {
            match cols {
                None => cols = Some(row.len()),
                Some(c) if c != row.len() => {
                    return Err(LatticeError::RaggedRows { expected: c, found: row.len() })
                }
                _ => {}
            }
            entries.extend_from_slice(row);
            count += 1;
        }
        Ok(Self { rows: count, cols: cols.unwrap_or(0), entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<IntegerVector> {
        (0..self.rows).map(|i| IntegerVector(self.row(i).to_vec())).collect()
    }

    pub fn transpose(&self) -> IntegerMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        IntegerMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                entries.push((0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum());
            }
        }
        IntegerMatrix { rows: self.rows, cols: other.cols, entries }
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &IntegerVector) -> IntegerVector {
        assert_eq!(self.cols, v.dim(), "matrix-vector shape mismatch");
        IntegerVector((0..self.rows).map(|i| dot(self.row(i), v.entries())).collect())
    }

    fn to_nested(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

/// Gcd of the absolute values of the entries; zero only for the zero vector.
pub fn gcd_content(v: &IntegerVector) -> BigInt {
    content(v.entries())
}

pub(crate) fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// The primitive lattice vector on the ray spanned by `v`.
pub fn primitive_part(v: &IntegerVector) -> Result<IntegerVector, LatticeError> {
    let g = gcd_content(v);
    if g.is_zero() {
        return Err(LatticeError::DegenerateRay);
    }
    Ok(IntegerVector(v.0.iter().map(|x| x / &g).collect()))
}

pub fn determinant(m: &IntegerMatrix) -> Result<BigInt, LatticeError> {
    if m.rows != m.cols {
        return Err(LatticeError::NotSquare { rows: m.rows, cols: m.cols });
    }
    Ok(bareiss_determinant(m.to_nested()))
}

/// Fraction-free Gaussian elimination. Every division is exact.
pub(crate) fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Determinant of the `d x d` matrix whose rows are `points[i] - points[0]`
/// for `i = 1..=d`. Its absolute value is the normalized volume of the
/// simplex spanned by the `d + 1` points.
pub(crate) fn simplex_determinant(points: &[&IntegerVector]) -> BigInt {
    let base = points[0];
    let rows = points[1..]
        .iter()
        .map(|p| p.0.iter().zip(&base.0).map(|(a, b)| a - b).collect())
        .collect();
    bareiss_determinant(rows)
}

/// A vector orthogonal to the `k - 1` rows of `rows` (each of length `k`),
/// given by signed maximal minors. Zero iff the rows are linearly dependent.
pub(crate) fn orthogonal_vector(rows: &[Vec<BigInt>], k: usize) -> Vec<BigInt> {
    debug_assert_eq!(rows.len() + 1, k);
    (0..k)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let det = bareiss_determinant(minor);
            if j % 2 == 0 {
                det
            } else {
                -det
            }
        })
        .collect()
}

/// Row-style Hermite normal form, keeping only the nonzero rows.
///
/// Pivots are positive and entries above each pivot are reduced into
/// `[0, pivot)`, so the output is canonical for the row lattice of `m`.
pub fn hermite_basis(m: &IntegerMatrix) -> IntegerMatrix {
    let mut a = m.to_nested();
    let cols = m.cols;
    let mut r = 0;
    for col in 0..cols {
        if r == a.len() {
            break;
        }
        loop {
            let pivot = (r..a.len())
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()).then(i.cmp(&j)));
            let Some(p) = pivot else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[r][col]);
                let (top, bottom) = a.split_at_mut(i);
                axpy(&mut bottom[0], &top[r], &q);
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][col].is_zero() {
            continue;
        }
        if a[r][col].is_negative() {
            for x in a[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = a[i][col].div_floor(&a[r][col]);
            if !q.is_zero() {
                let (top, bottom) = a.split_at_mut(r);
                axpy(&mut top[i], &bottom[0], &q);
            }
        }
        r += 1;
    }
    a.truncate(r);
    IntegerMatrix::from_row_slices(a.iter().map(Vec::as_slice))
        .map(|mut h| {
            h.cols = cols;
            h
        })
        .expect("rows share a common length")
}

/// `target -= q * source`
fn axpy(target: &mut [BigInt], source: &[BigInt], q: &BigInt) {
    for (t, s) in target.iter_mut().zip(source) {
        *t -= q * s;
    }
}

/// An integral point on `{x : <m, x> = 1}` together with a lattice basis of
/// the parallel linear hyperplane `{x : <m, x> = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneBasis {
    pub base_point: IntegerVector,
    pub basis: Vec<IntegerVector>,
}

/// Lattice coordinates on the affine hyperplane `<m, x> = 1`.
///
/// Works by integer column operations `m U = (0, .., ±1, .., 0)` with `U`
/// unimodular. The pivot is always the first entry of smallest nonzero
/// absolute value, so the output is reproducible. The column of `U` at the
/// final pivot (sign-corrected) is the base point; the remaining columns, in
/// index order, form the kernel basis.
pub fn hyperplane_lattice_basis(m: &IntegerVector) -> Result<HyperplaneBasis, LatticeError> {
    let n = m.dim();
    if !gcd_content(m).is_one() {
        return Err(LatticeError::NotPrimitive(m.clone()));
    }
    let mut w: Vec<BigInt> = m.entries().to_vec();
    let mut columns: Vec<Vec<BigInt>> = (0..n).map(|j| IntegerVector::unit(n, j).0).collect();
    let pivot = loop {
        let p = (0..n)
            .filter(|&j| !w[j].is_zero())
            .min_by(|&i, &j| w[i].abs().cmp(&w[j].abs()).then(i.cmp(&j)))
            .expect("primitive vector is nonzero");
        let mut reduced = true;
        for j in 0..n {
            if j == p || w[j].is_zero() {
                continue;
            }
            let q = w[j].div_floor(&w[p]);
            let wp = w[p].clone();
            w[j] -= &q * &wp;
            let source = columns[p].clone();
            axpy(&mut columns[j], &source, &q);
            if !w[j].is_zero() {
                reduced = false;
            }
        }
        if reduced {
            break p;
        }
    };
    let sign = w[pivot].signum();
    let base_point = IntegerVector(columns[pivot].iter().map(|x| x * &sign).collect());
    let basis = (0..n).filter(|&j| j != pivot).map(|j| IntegerVector(columns[j].clone())).collect();
    Ok(HyperplaneBasis { base_point, basis })
}

/// Exact inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &IntegerMatrix) -> Result<IntegerMatrix, LatticeError> {
    let det = determinant(m)?;
    if !det.abs().is_one() {
        return Err(LatticeError::NotUnimodular(det));
    }
    let inv = rational::inverse(&m.to_nested()).ok_or(LatticeError::NotUnimodular(det))?;
    let n = m.rows;
    let entries = inv.into_iter().flatten().map(|q| q.to_integer()).collect();
    IntegerMatrix::new(n, n, entries)
}
