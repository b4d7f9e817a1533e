//! A small exact linear-programming solver.
//!
//! Dense two-phase simplex over `BigRational` with Bland's rule, which rules
//! out cycling. Problems in this crate have at most a few dozen variables,
//! so a dense tableau is plenty.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { value: BigRational, point: Vec<BigRational> },
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    objective: Vec<BigRational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        if !self.objective[c].is_zero() {
            let f = self.objective[c].clone();
            for (x, p) in self.objective.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations with entering columns restricted to
    /// `0..allowed`. Returns `false` if the objective is unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.objective[j].is_negative()) else {
                return true;
            };
            let rhs = self.rhs();
            let mut best: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[c];
                let better = match &best {
                    None => true,
                    Some((b, r)) => ratio < *r || (ratio == *r && self.basis[i] < self.basis[*b]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Maximizes `c . x` subject to `A x = b`, `x >= 0`.
pub fn maximize(a: &[Vec<BigRational>], b: &[BigRational], c: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut r: Vec<BigRational> = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
        r.extend((0..m).map(|j| if i == j { BigRational::from_integer(1.into()) } else { BigRational::zero() }));
        r.push(if flip { -rhs } else { rhs.clone() });
        rows.push(r);
    }
    // Phase one: maximize -(sum of artificials).
    let mut objective = vec![BigRational::zero(); width + 1];
    for row in &rows {
        for (j, x) in row.iter().enumerate() {
            if j < n || j == width {
                objective[j] -= x;
            }
        }
    }
    let mut t = Tableau { rows, objective, basis: (n..n + m).collect(), width };
    t.optimize(width);
    if t.objective[width].is_negative() {
        return LpOutcome::Infeasible;
    }
    // Drive remaining artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    // Phase two.
    let mut objective = vec![BigRational::zero(); width + 1];
    for (j, cj) in c.iter().enumerate() {
        objective[j] = -cj;
    }
    for (i, &bj) in t.basis.iter().enumerate() {
        if !objective[bj].is_zero() {
            let f = objective[bj].clone();
            for (x, p) in objective.iter_mut().zip(&t.rows[i]) {
                *x -= &f * p;
            }
        }
    }
    t.objective = objective;
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }
    let mut point = vec![BigRational::zero(); n];
    for (i, &bj) in t.basis.iter().enumerate() {
        if bj < n {
            point[bj] = t.rows[i][width].clone();
        }
    }
    LpOutcome::Optimal { value: t.objective[width].clone(), point }
}

/// Whether `target` lies in the cone generated by `generators`.
pub fn in_cone(generators: &[&[BigInt]], target: &[BigInt]) -> bool {
    let dim = target.len();
    let a: Vec<Vec<BigRational>> = (0..dim)
        .map(|k| generators.iter().map(|g| BigRational::from_integer(g[k].clone())).collect())
        .collect();
    let b: Vec<BigRational> = target.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let c = vec![BigRational::zero(); generators.len()];
    maximize(&a, &b, &c).is_feasible()
}
