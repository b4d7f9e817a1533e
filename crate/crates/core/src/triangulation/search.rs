//! Exhaustive search for basic (unimodular) triangulations.
//!
//! Candidate cells are all unimodular `(d + 1)`-subsets of the lattice
//! points, in lexicographic order. The search starts with each candidate
//! containing the first lattice point (a vertex of `P`, hence a vertex of
//! every triangulation using all lattice points). After that it always
//! extends across the lexicographically smallest *open* face: an interior
//! `(d - 1)`-face of a placed cell with no cell yet on its other side. Every
//! basic triangulation has exactly one cell across such a face, so branching
//! over the candidates there is complete. When no open face remains the
//! placed cells cover `P`.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive};

use super::{intersect_properly, validate_triangulation, GeometricTriangulation, TriangulationError};
use crate::lattice::{simplex_determinant, IntegerVector};
use crate::placing::orientation;
use crate::polytope::LatticePolytope;

pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Witness(GeometricTriangulation),
    /// The whole search space was explored without finding a basic
    /// triangulation.
    ExhaustedNone,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    /// Cell placements attempted.
    pub nodes: u64,
    pub unimodular_cells: usize,
}

enum Step {
    Found(Vec<usize>),
    Dead,
    OutOfBudget,
}

struct Search<'a> {
    points: &'a [IntegerVector],
    polytope: &'a LatticePolytope,
    candidates: Vec<Vec<usize>>,
    by_face: HashMap<Vec<usize>, Vec<usize>>,
    tight: Vec<BTreeSet<usize>>,
    volume: usize,
    budget: u64,
    nodes: u64,
    compatible: HashMap<(usize, usize), bool>,
    placed: Vec<usize>,
    /// Face -> (owning candidate, opposite vertex), for faces with one cell.
    open: BTreeSet<Vec<usize>>,
    owners: HashMap<Vec<usize>, Vec<(usize, usize)>>,
}

fn faces_of(cell: &[usize]) -> impl Iterator<Item = (Vec<usize>, usize)> + '_ {
    (0..cell.len()).map(move |skip| {
        let face = cell.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
        (face, cell[skip])
    })
}

impl<'a> Search<'a> {
    fn is_boundary(&self, face: &[usize]) -> bool {
        let mut it = face.iter();
        let first = &self.tight[*it.next().expect("faces are nonempty")];
        first.iter().any(|f| face[1..].iter().all(|&i| self.tight[i].contains(f)))
    }

    fn compatible_with(&mut self, a: usize, b: usize) -> bool {
        let key = (a.min(b), a.max(b));
        if let Some(&c) = self.compatible.get(&key) {
            return c;
        }
        let ok = intersect_properly(self.points, &self.candidates[a], &self.candidates[b]);
        self.compatible.insert(key, ok);
        ok
    }

    fn place(&mut self, cand: usize) {
        self.placed.push(cand);
        let cell = self.candidates[cand].clone();
        for (face, opposite) in faces_of(&cell) {
            let entry = self.owners.entry(face.clone()).or_default();
            entry.push((cand, opposite));
            let interior = !self.is_boundary(&face);
            let count = self.owners[&face].len();
            if interior && count == 1 {
                self.open.insert(face);
            } else {
                self.open.remove(&face);
            }
        }
    }

    fn unplace(&mut self, cand: usize) {
        let popped = self.placed.pop();
        debug_assert_eq!(popped, Some(cand));
        let cell = self.candidates[cand].clone();
        for (face, _) in faces_of(&cell) {
            let entry = self.owners.get_mut(&face).expect("placed face");
            entry.retain(|&(c, _)| c != cand);
            let count = entry.len();
            if count == 0 {
                self.owners.remove(&face);
                self.open.remove(&face);
            } else if count == 1 && !self.is_boundary(&face) {
                self.open.insert(face);
            }
        }
    }

    fn try_cell(&mut self, cand: usize) -> Option<Step> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Some(Step::OutOfBudget);
        }
        let placed = self.placed.clone();
        if !placed.iter().all(|&p| self.compatible_with(p, cand)) {
            return None;
        }
        self.place(cand);
        match self.extend() {
            Step::Dead => {
                self.unplace(cand);
                None
            }
            other => Some(other),
        }
    }

    fn extend(&mut self) -> Step {
        let Some(face) = self.open.iter().next().cloned() else {
            return self.closed();
        };
        if self.placed.len() >= self.volume {
            return Step::Dead;
        }
        let (owner, opposite) = self.owners[&face][0];
        let face_pts: Vec<&IntegerVector> = face.iter().map(|&i| &self.points[i]).collect();
        let inside: Sign = orientation(&face_pts, &self.points[opposite]);
        let options = self.by_face.get(&face).cloned().unwrap_or_default();
        for cand in options {
            if cand == owner {
                continue;
            }
            let apex = *self.candidates[cand].iter().find(|v| !face.contains(v)).expect("one extra vertex");
            if orientation(&face_pts, &self.points[apex]) != -inside {
                continue;
            }
            if let Some(step) = self.try_cell(cand) {
                return step;
            }
        }
        Step::Dead
    }

    /// No open faces: the placed cells cover the polytope.
    fn closed(&mut self) -> Step {
        if self.placed.len() != self.volume {
            return Step::Dead;
        }
        let cells: Vec<usize> = self.placed.clone();
        let t = self.triangulation(&cells);
        if validate_triangulation(&t, self.polytope).is_valid() {
            Step::Found(cells)
        } else {
            Step::Dead
        }
    }

    fn triangulation(&self, cells: &[usize]) -> GeometricTriangulation {
        let mut cells: Vec<Vec<usize>> = cells.iter().map(|&c| self.candidates[c].clone()).collect();
        cells.sort();
        GeometricTriangulation::new(self.points.to_vec(), cells)
    }

    fn run(&mut self) -> Step {
        let starts: Vec<usize> = (0..self.candidates.len()).filter(|&c| self.candidates[c][0] == 0).collect();
        for cand in starts {
            if let Some(step) = self.try_cell(cand) {
                return step;
            }
        }
        Step::Dead
    }
}

/// Looks for a basic triangulation of `p`, exploring at most `budget` cell
/// placements. The three outcomes are kept distinct: running out of budget
/// never counts as "none exists".
pub fn basic_triangulation_search(p: &LatticePolytope, budget: u64) -> Result<SearchReport, TriangulationError> {
    let points = p.lattice_points()?.all_points;
    let d = p.ambient_dim();
    let volume = p.normalized_volume().to_usize().expect("desk-scale volume");
    let candidates: Vec<Vec<usize>> = (0..points.len())
        .combinations(d + 1)
        .filter(|c| {
            let v: Vec<&IntegerVector> = c.iter().map(|&i| &points[i]).collect();
            simplex_determinant(&v).abs().is_one()
        })
        .collect();
    let mut by_face: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (ci, cell) in candidates.iter().enumerate() {
        for (face, _) in faces_of(cell) {
            by_face.entry(face).or_default().push(ci);
        }
    }
    let tight = points
        .iter()
        .map(|x| {
            p.facet_halfspaces()
                .iter()
                .enumerate()
                .filter(|(_, h)| h.slack(x) == BigInt::from(0))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let unimodular_cells = candidates.len();
    let mut search = Search {
        points: &points,
        polytope: p,
        candidates,
        by_face,
        tight,
        volume,
        budget,
        nodes: 0,
        compatible: HashMap::new(),
        placed: Vec::new(),
        open: BTreeSet::new(),
        owners: HashMap::new(),
    };
    let outcome = match search.run() {
        Step::Found(cells) => SearchOutcome::Witness(search.triangulation(&cells)),
        Step::Dead => SearchOutcome::ExhaustedNone,
        Step::OutOfBudget => SearchOutcome::BudgetExceeded,
    };
    Ok(SearchReport { outcome, nodes: search.nodes.min(budget), unimodular_cells })
}
