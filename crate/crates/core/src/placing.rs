//! Placing triangulations: insert points one at a time in a fixed order.
//!
//! A point outside the current hull is coned to every boundary facet it sees
//! strictly; a point inside (or on the boundary of) the hull stellarly
//! subdivides every cell containing it. The result uses every input point as
//! a vertex.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

use crate::lattice::{bareiss_determinant, rational, IntegerVector};

/// Sign of the determinant with rows `face[i] - face[0]` (i >= 1) and
/// `x - face[0]`; `face` has exactly `d` points.
pub(crate) fn orientation(face: &[&IntegerVector], x: &IntegerVector) -> Sign {
    let base = face[0];
    let rows = face[1..]
        .iter()
        .copied()
        .chain(std::iter::once(x))
        .map(|p| p.entries().iter().zip(base.entries()).map(|(a, b)| a - b).collect())
        .collect();
    bareiss_determinant(rows).sign()
}

/// Signs of the barycentric coordinates of `x` in the simplex `cell`
/// (`d + 1` points), each multiplied by the sign of the simplex volume, so
/// `Plus` means strictly positive and `NoSign` means zero.
pub(crate) fn barycentric_signs(cell: &[&IntegerVector], x: &IntegerVector) -> Vec<Ordering> {
    let base = cell[0];
    let diff = |p: &IntegerVector| -> Vec<BigInt> {
        p.entries().iter().zip(base.entries()).map(|(a, b)| a - b).collect()
    };
    let rows: Vec<Vec<BigInt>> = cell[1..].iter().map(|p| diff(p)).collect();
    let total = bareiss_determinant(rows.clone());
    debug_assert!(!total.is_zero(), "degenerate cell");
    let target = diff(x);
    let mut numerators = Vec::with_capacity(cell.len());
    let mut rest = BigInt::zero();
    for k in 0..rows.len() {
        let mut replaced = rows.clone();
        replaced[k] = target.clone();
        let det = bareiss_determinant(replaced);
        rest += &det;
        numerators.push(det);
    }
    let first = &total - rest;
    std::iter::once(first)
        .chain(numerators)
        .map(|n| {
            let s = if total.is_negative() { -n } else { n };
            s.cmp(&BigInt::zero())
        })
        .collect()
}

fn initial_simplex(points: &[IntegerVector], dim: usize) -> Option<Vec<usize>> {
    let mut chosen = vec![0];
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (i, p) in points.iter().enumerate().skip(1) {
        if chosen.len() == dim + 1 {
            break;
        }
        let mut candidate = rows.clone();
        candidate.push(p.sub(&points[0]).into_entries());
        if rational::rank(&candidate) == candidate.len() {
            rows = candidate;
            chosen.push(i);
        }
    }
    (chosen.len() == dim + 1).then_some(chosen)
}

/// Triangulates the convex hull of `points` using all of them as vertices.
/// Returns `None` if the points do not affinely span their ambient space.
/// Points must be pairwise distinct.
pub(crate) fn placing_triangulation(points: &[IntegerVector]) -> Option<Vec<Vec<usize>>> {
    let dim = points.first()?.dim();
    let start = initial_simplex(points, dim)?;
    let mut cells: Vec<Vec<usize>> = vec![start.clone()];
    for idx in 0..points.len() {
        if start.contains(&idx) {
            continue;
        }
        let p = &points[idx];
        let mut containing = Vec::new();
        for (ci, cell) in cells.iter().enumerate() {
            let verts: Vec<&IntegerVector> = cell.iter().map(|&i| &points[i]).collect();
            let signs = barycentric_signs(&verts, p);
            if signs.iter().all(|&s| s != Ordering::Less) {
                containing.push((ci, signs));
            }
        }
        if containing.is_empty() {
            let mut faces: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            for cell in &cells {
                for skip in 0..cell.len() {
                    let face: Vec<usize> =
                        cell.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                    faces.entry(face).or_default().push(cell[skip]);
                }
            }
            let mut added = Vec::new();
            for (face, opposite) in faces {
                if opposite.len() != 1 {
                    continue;
                }
                let fv: Vec<&IntegerVector> = face.iter().map(|&i| &points[i]).collect();
                let inside = orientation(&fv, &points[opposite[0]]);
                let here = orientation(&fv, p);
                if here != Sign::NoSign && here != inside {
                    let mut cell = face.clone();
                    cell.push(idx);
                    cell.sort_unstable();
                    added.push(cell);
                }
            }
            added.sort();
            cells.extend(added);
        } else {
            let mut replaced = Vec::new();
            let remove: Vec<usize> = containing.iter().map(|(ci, _)| *ci).collect();
            for (ci, signs) in &containing {
                let cell = &cells[*ci];
                for (k, s) in signs.iter().enumerate() {
                    if *s == Ordering::Greater {
                        let mut new_cell = cell.clone();
                        new_cell[k] = idx;
                        new_cell.sort_unstable();
                        replaced.push(new_cell);
                    }
                }
            }
            cells = cells
                .into_iter()
                .enumerate()
                .filter(|(i, _)| !remove.contains(i))
                .map(|(_, c)| c)
                .chain(replaced)
                .collect();
        }
    }
    cells.sort();
    Some(cells)
}
