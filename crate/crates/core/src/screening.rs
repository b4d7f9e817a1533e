//! Classification of Gorenstein toric singularities by their support
//! polytope: smooth, terminal, no crepant resolution, or resolvable.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cone::{self, Cone, ConeError, Flattening, GorensteinCertificate, NotGorenstein};
use crate::fh::{self, FhError};
use crate::lattice::IntegerVector;
use crate::polytope::{LatticePolytope, PolytopeError, DEFAULT_POINT_BUDGET};
use crate::triangulation::{
    basic_triangulation_search, is_basic, validate_triangulation, GeometricTriangulation, SearchOutcome,
    TriangulationError,
};

#[derive(Debug, Error)]
pub enum ScreeningError {
    #[error("bound precondition violated: {0}")]
    Bound(#[from] FhError),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

/// `f_d(CycP_{d+1}(total)) - (boundary - d)`: the largest normalized volume
/// a support polytope with these lattice point counts can have if it admits
/// a basic triangulation.
pub fn ub_final_rhs(points_total: i64, points_boundary: i64, d: i64) -> Result<BigInt, ScreeningError> {
    if points_boundary < d + 1 || points_total < points_boundary {
        return Err(FhError::TooFewVertices { poly_dim: d, vertices: points_boundary.min(points_total) }.into());
    }
    Ok(fh::ball_facet_upper_bound(points_total, points_boundary, d)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Smooth,
    TerminalA,
    ClassBByBound,
    ClassBByExhaustion,
    ClassC,
    Inconclusive,
    /// The cone has no Gorenstein certificate; nothing else is computed.
    NonGorenstein,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Smooth => "smooth",
            Verdict::TerminalA => "terminal_A",
            Verdict::ClassBByBound => "class_B_by_bound",
            Verdict::ClassBByExhaustion => "class_B_by_exhaustion",
            Verdict::ClassC => "class_C",
            Verdict::Inconclusive => "inconclusive",
            Verdict::NonGorenstein => "non_gorenstein",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where an inconclusive screening ran out of budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    LatticePoints,
    Search,
}

impl Stage {
    pub fn as_str(self) -> &'static str {
        match self {
            Stage::LatticePoints => "lattice_points",
            Stage::Search => "search",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    NotRun,
    Witness,
    ExhaustedNone,
    BudgetExceeded,
}

impl SearchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::NotRun => "not_run",
            SearchStatus::Witness => "witness",
            SearchStatus::ExhaustedNone => "exhausted_none",
            SearchStatus::BudgetExceeded => "budget_exceeded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScreenInput {
    Polytope(Vec<IntegerVector>),
    Cone(Vec<IntegerVector>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GorensteinStatus {
    Certificate(GorensteinCertificate),
    Failed(NotGorenstein),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScreeningReport {
    pub input: ScreenInput,
    pub gorenstein: GorensteinStatus,
    /// Hyperplane coordinates used for cone input.
    pub flattening: Option<Flattening>,
    pub polytope: Option<LatticePolytope>,
    pub d: usize,
    pub volume: Option<BigInt>,
    pub points_total: Option<u64>,
    pub points_boundary: Option<u64>,
    pub bound_rhs: Option<BigInt>,
    pub bound_holds: Option<bool>,
    pub verdict: Verdict,
    pub witness: Option<GeometricTriangulation>,
    pub search_status: SearchStatus,
    pub search_nodes: u64,
    pub limiting_stage: Option<Stage>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    pub points: u64,
    pub search: u64,
}

impl Budgets {
    pub fn with_search(search: u64) -> Self {
        Self { points: DEFAULT_POINT_BUDGET, search }
    }
}

/// Runs the decision ladder on a support polytope.
pub fn screen(p: &LatticePolytope, oracle_budget: u64) -> ScreeningReport {
    screen_with_budgets(p, Budgets::with_search(oracle_budget))
}

pub fn screen_with_budgets(p: &LatticePolytope, budgets: Budgets) -> ScreeningReport {
    let d = p.ambient_dim();
    let mut m = vec![BigInt::zero(); d + 1];
    m[0] = BigInt::one();
    let cert = GorensteinCertificate { m_sigma: IntegerVector::new(m).expect("d >= 1") };
    let report = ScreeningReport {
        input: ScreenInput::Polytope(p.vertices().to_vec()),
        gorenstein: GorensteinStatus::Certificate(cert),
        flattening: None,
        polytope: Some(p.clone()),
        d,
        volume: Some(p.normalized_volume()),
        points_total: None,
        points_boundary: None,
        bound_rhs: None,
        bound_holds: None,
        verdict: Verdict::Inconclusive,
        witness: None,
        search_status: SearchStatus::NotRun,
        search_nodes: 0,
        limiting_stage: None,
    };
    ladder(p, budgets, report)
}

fn ladder(p: &LatticePolytope, budgets: Budgets, mut report: ScreeningReport) -> ScreeningReport {
    let d = p.ambient_dim() as i64;
    let volume = report.volume.clone().expect("volume is always computed");
    let points = match p.lattice_points_with_budget(budgets.points) {
        Ok(pts) => pts,
        Err(PolytopeError::PointBudgetExceeded { .. }) => {
            report.limiting_stage = Some(Stage::LatticePoints);
            return report;
        }
        Err(e) => panic!("lattice point enumeration failed on a valid polytope: {e}"),
    };
    let total = points.all_points.len() as u64;
    let boundary = points.boundary_points.len() as u64;
    let rhs = ub_final_rhs(total as i64, boundary as i64, d).expect("a d-polytope has at least d+1 boundary points");
    report.points_total = Some(total);
    report.points_boundary = Some(boundary);
    report.bound_holds = Some(volume <= rhs);
    report.bound_rhs = Some(rhs);

    if volume.is_one() {
        report.verdict = Verdict::Smooth;
        return report;
    }
    if total as usize == p.vertices().len() {
        report.verdict = Verdict::TerminalA;
        return report;
    }
    if report.bound_holds == Some(false) {
        report.verdict = Verdict::ClassBByBound;
        return report;
    }
    match basic_triangulation_search(p, budgets.search) {
        Ok(search) => {
            report.search_nodes = search.nodes;
            match search.outcome {
                SearchOutcome::Witness(t) => {
                    debug_assert!(is_basic(&t) && validate_triangulation(&t, p).is_valid());
                    report.search_status = SearchStatus::Witness;
                    report.verdict = Verdict::ClassC;
                    report.witness = Some(t);
                }
                SearchOutcome::ExhaustedNone => {
                    report.search_status = SearchStatus::ExhaustedNone;
                    report.verdict = Verdict::ClassBByExhaustion;
                }
                SearchOutcome::BudgetExceeded => {
                    report.search_status = SearchStatus::BudgetExceeded;
                    report.limiting_stage = Some(Stage::Search);
                }
            }
        }
        Err(TriangulationError::Polytope(PolytopeError::PointBudgetExceeded { .. })) => {
            report.search_status = SearchStatus::BudgetExceeded;
            report.limiting_stage = Some(Stage::LatticePoints);
        }
        Err(e) => panic!("search failed on a valid polytope: {e}"),
    }
    report
}

/// Screens a cone: finds its Gorenstein certificate, flattens the support
/// polytope and runs the ladder on it.
pub fn screen_cone(c: &Cone, oracle_budget: u64) -> Result<ScreeningReport, ScreeningError> {
    screen_cone_with_budgets(c, Budgets::with_search(oracle_budget))
}

pub fn screen_cone_with_budgets(c: &Cone, budgets: Budgets) -> Result<ScreeningReport, ScreeningError> {
    let input = ScreenInput::Cone(c.rays().to_vec());
    let d = c.ambient_dim() - 1;
    let cert = match cone::gorenstein_vector(c) {
        Ok(cert) => cert,
        Err(reason) => {
            return Ok(ScreeningReport {
                input,
                gorenstein: GorensteinStatus::Failed(reason),
                flattening: None,
                polytope: None,
                d,
                volume: None,
                points_total: None,
                points_boundary: None,
                bound_rhs: None,
                bound_holds: None,
                verdict: Verdict::NonGorenstein,
                witness: None,
                search_status: SearchStatus::NotRun,
                search_nodes: 0,
                limiting_stage: None,
            })
        }
    };
    let (p, flattening) = cone::support_polytope(c, &cert)?;
    let report = ScreeningReport {
        input,
        gorenstein: GorensteinStatus::Certificate(cert),
        flattening: Some(flattening),
        volume: Some(p.normalized_volume()),
        polytope: Some(p.clone()),
        d,
        points_total: None,
        points_boundary: None,
        bound_rhs: None,
        bound_holds: None,
        verdict: Verdict::Inconclusive,
        witness: None,
        search_status: SearchStatus::NotRun,
        search_nodes: 0,
        limiting_stage: None,
    };
    Ok(ladder(&p, budgets, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::make_cone;
    use crate::triangulation::DEFAULT_SEARCH_BUDGET;

    fn rays(xs: &[&[i64]]) -> Vec<IntegerVector> {
        xs.iter().map(|x| IntegerVector::from_i64(x)).collect()
    }

    #[test]
    fn final_rhs_examples() {
        assert_eq!(ub_final_rhs(8, 4, 3).unwrap(), BigInt::from(19));
        assert_eq!(ub_final_rhs(6, 6, 2).unwrap(), BigInt::from(4));
        for d in 2..8 {
            let rhs = ub_final_rhs(d + 1, d + 1, d).unwrap();
            assert_eq!(rhs, fh::cyclic_facet_formula(d + 1, d + 1) - 1);
            assert!(rhs >= BigInt::one());
        }
        assert!(ub_final_rhs(3, 4, 3).is_err());
        assert!(ub_final_rhs(8, 3, 3).is_err());
    }

    #[test]
    fn obstructed_cone() {
        let c = make_cone(&rays(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[-3, -7, -9, 20]])).unwrap();
        let r = screen_cone(&c, DEFAULT_SEARCH_BUDGET).unwrap();
        match &r.gorenstein {
            GorensteinStatus::Certificate(cert) => assert_eq!(cert.m_sigma, IntegerVector::from_i64(&[1, 1, 1, 1])),
            other => panic!("{other:?}"),
        }
        assert_eq!(r.volume, Some(BigInt::from(20)));
        assert_eq!(r.points_total, Some(8));
        assert_eq!(r.points_boundary, Some(4));
        assert_eq!(r.bound_rhs, Some(BigInt::from(19)));
        assert_eq!(r.bound_holds, Some(false));
        assert_eq!(r.verdict, Verdict::ClassBByBound);
        assert_eq!(r.search_status, SearchStatus::NotRun);
    }

    #[test]
    fn polytope_examples() {
        let square = LatticePolytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert_eq!(screen(&square, DEFAULT_SEARCH_BUDGET).verdict, Verdict::TerminalA);

        let fat = LatticePolytope::from_i64(&[&[0, 0], &[2, 0], &[0, 2]]).unwrap();
        let r = screen(&fat, DEFAULT_SEARCH_BUDGET);
        assert_eq!(r.verdict, Verdict::ClassC);
        assert_eq!(r.bound_rhs, Some(BigInt::from(4)));
        assert_eq!(r.witness.unwrap().cells.len(), 4);

        let unit = LatticePolytope::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(screen(&unit, DEFAULT_SEARCH_BUDGET).verdict, Verdict::Smooth);

        let s = LatticePolytope::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[-7, -9, 20]]).unwrap();
        let r = screen(&s, DEFAULT_SEARCH_BUDGET);
        assert_eq!(r.verdict, Verdict::ClassBByBound);
        assert_eq!(r.bound_rhs, Some(BigInt::from(19)));
    }

    #[test]
    fn cone_examples() {
        let c = make_cone(&rays(&[&[2, 1], &[1, 2], &[1, 0]])).unwrap();
        let r = screen_cone(&c, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(r.verdict, Verdict::NonGorenstein);
        assert_eq!(r.gorenstein, GorensteinStatus::Failed(NotGorenstein::NoSolution));

        let std = make_cone(&rays(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(screen_cone(&std, DEFAULT_SEARCH_BUDGET).unwrap().verdict, Verdict::Smooth);
    }

    #[test]
    fn budgets_surface_as_inconclusive() {
        let big = LatticePolytope::from_i64(&[&[0, 0], &[4, 0], &[0, 4]]).unwrap();
        let r = screen(&big, 3);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.limiting_stage, Some(Stage::Search));
        assert_eq!(r.search_status, SearchStatus::BudgetExceeded);
        assert!(r.bound_rhs.is_some());

        let r = screen_with_budgets(&big, Budgets { points: 4, search: 10 });
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.limiting_stage, Some(Stage::LatticePoints));
    }

    #[test]
    fn reeve_is_terminal() {
        let reeve = LatticePolytope::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 5]]).unwrap();
        assert_eq!(screen(&reeve, DEFAULT_SEARCH_BUDGET).verdict, Verdict::TerminalA);
    }
}
