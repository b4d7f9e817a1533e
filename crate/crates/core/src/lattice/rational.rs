//! Exact rational Gaussian elimination for the few places where division
//! cannot be avoided (linear solves, inverses, ranks).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub(crate) fn to_rational(rows: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    rows.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn row_reduce(a: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let (src, dst) = if i < r {
                    let (top, bottom) = a.split_at_mut(r);
                    (&bottom[0], &mut top[i])
                } else {
                    let (top, bottom) = a.split_at_mut(i);
                    (&top[r], &mut bottom[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d -= &f * s;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut a = to_rational(rows);
    row_reduce(&mut a, cols).len()
}

/// Outcome of solving `A x = b` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<BigRational>),
    /// Consistent but with free variables; one particular solution is given.
    Underdetermined(Vec<BigRational>),
    Inconsistent,
}

pub fn solve(a: &[Vec<BigInt>], b: &[BigInt]) -> Solution {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            row.iter().chain(std::iter::once(rhs)).map(|x| BigRational::from_integer(x.clone())).collect()
        })
        .collect();
    let pivots = row_reduce(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return Solution::Inconsistent;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][cols].clone();
    }
    if pivots.len() == cols {
        Solution::Unique(x)
    } else {
        Solution::Underdetermined(x)
    }
}

/// Inverse of a square matrix, or `None` if singular.
pub fn inverse(a: &[Vec<BigInt>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}
