//! Acceptance gate. Runs every criterion, prints one line each, and exits
//! non-zero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use crepant_core::cone::{cone_over_polytope, gorenstein_vector, make_cone, support_polytope};
use crepant_core::fh::{
    ball_f_upper_bound, ball_facet_upper_bound, boundary_h_residual, cyclic_facets, cyclic_h, f_from_h, h_from_f,
    FVector, HVector,
};
use crepant_core::lattice::IntegerVector;
use crepant_core::polytope::LatticePolytope;
use crepant_core::screening::{screen, screen_cone, ub_final_rhs, GorensteinStatus, SearchStatus, Verdict};
use crepant_core::triangulation::{
    basic_triangulation_search, boundary_of, f_vector_of, full_triangulation, is_basic, validate_triangulation,
    GeometricTriangulation, SearchOutcome, DEFAULT_SEARCH_BUDGET,
};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

const LIMIT_END_TO_END: Duration = Duration::from_secs(1);
const LIMIT_CYCLIC: Duration = Duration::from_secs(1);
const LIMIT_IDENTITY: Duration = Duration::from_secs(60);
const LIMIT_SOUNDNESS: Duration = Duration::from_secs(300);

const MIN_TRIANGULATIONS: usize = 200;
const MIN_WITNESSES: usize = 100;
const MIN_POLYGONS: usize = 100;
const MIN_ROUND_TRIPS: usize = 50;

/// Search budget used for corpus polytopes; small enough to keep the suite
/// fast, and every corpus search completes well inside it.
const CORPUS_BUDGET: u64 = 200_000;

fn obstructed_simplex() -> LatticePolytope {
    LatticePolytope::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[-7, -9, 20]]).unwrap()
}

/// Triangulations for the identity and bound suites: the placing
/// triangulation of each corpus polytope, and its basic witness if any.
fn triangulation_corpus() -> Vec<GeometricTriangulation> {
    let mut out = Vec::new();
    for p in common::corpus(7, 90, 90) {
        out.push(full_triangulation(&p).unwrap());
        if let SearchOutcome::Witness(t) = basic_triangulation_search(&p, CORPUS_BUDGET).unwrap().outcome {
            out.push(t);
        }
    }
    out
}

fn criterion_1() -> String {
    let start = Instant::now();
    let rays: Vec<IntegerVector> = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [-3, -7, -9, 20]]
        .iter()
        .map(|r| IntegerVector::from_i64(r))
        .collect();
    let r = screen_cone(&make_cone(&rays).unwrap(), DEFAULT_SEARCH_BUDGET).unwrap();
    let elapsed = start.elapsed();
    let GorensteinStatus::Certificate(cert) = &r.gorenstein else { panic!("no certificate") };
    assert_eq!(cert.m_sigma, IntegerVector::from_i64(&[1, 1, 1, 1]));
    assert_eq!(r.volume, Some(BigInt::from(20)));
    assert_eq!(r.points_total, Some(8));
    assert_eq!(r.points_boundary, Some(4));
    assert_eq!(r.points_total.unwrap() - r.points_boundary.unwrap(), 4);
    assert_eq!(r.bound_rhs, Some(BigInt::from(19)));
    assert_eq!(r.verdict, Verdict::ClassBByBound);
    assert!(elapsed < LIMIT_END_TO_END, "took {elapsed:?}");
    format!("m=(1,1,1,1) vol=20 pts=8/4/4 rhs=19 class_B_by_bound in {elapsed:?}")
}

fn criterion_2() -> String {
    let start = Instant::now();
    let mut checked = 0;
    for dd in 2..=10i64 {
        for k in dd + 1..=20 {
            let top = f_from_h(&cyclic_h(dd, k).unwrap()).unwrap().top();
            let closed = cyclic_facets(dd, k).unwrap();
            assert_eq!(top, closed, "D={dd} k={k}");
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < LIMIT_CYCLIC, "took {elapsed:?}");
    format!("{checked} (D, k) pairs in {elapsed:?}")
}

fn ball_data(t: &GeometricTriangulation) -> (FVector, HVector, HVector, i64, i64) {
    let f = f_vector_of(t).unwrap();
    let bd = boundary_of(t).unwrap();
    let f_bd = bd.f_vector().unwrap();
    let b = f.vertices().to_i64().unwrap();
    let b_prime = bd.vertex_set().len() as i64;
    (f.clone(), h_from_f(&f), h_from_f(&f_bd), b, b_prime)
}

fn criterion_3(corpus: &[GeometricTriangulation], built_in: Duration) -> String {
    let start = Instant::now();
    assert!(corpus.len() >= MIN_TRIANGULATIONS, "only {} triangulations", corpus.len());
    for t in corpus {
        let (_, h_ball, h_bd, _, _) = ball_data(t);
        let res = boundary_h_residual(&h_ball, &h_bd).unwrap();
        assert!(res.iter().all(Zero::is_zero), "residual {res:?} on {:?}", t.cells);
    }
    let elapsed = start.elapsed() + built_in;
    assert!(elapsed < LIMIT_IDENTITY, "took {elapsed:?}");
    format!("{} triangulations, all residuals zero, {elapsed:?} including corpus build", corpus.len())
}

fn criterion_4(corpus: &[GeometricTriangulation]) -> String {
    let mut per_index = 0;
    let mut facet_checks = 0;
    for t in corpus {
        let (f, _, h_bd, b, b_prime) = ball_data(t);
        let dd = f.complex_dim();
        // The cyclic comparison polytope needs at least D + 2 vertices.
        if b >= dd + 2 {
            for i in 0..=dd {
                let ub = ball_f_upper_bound(i, b, dd, &h_bd).unwrap();
                assert!(f.f(i) <= ub, "f_{i}={} > {ub} on {:?}", f.f(i), t.cells);
                per_index += 1;
            }
        }
        let ub = ball_facet_upper_bound(b, b_prime, dd).unwrap();
        assert!(f.top() <= ub, "facets {} > {ub} on {:?}", f.top(), t.cells);
        facet_checks += 1;
    }
    format!("{per_index} per-index and {facet_checks} facet comparisons, zero violations")
}

fn criterion_5() -> String {
    let start = Instant::now();
    let mut witnesses = 0;
    let mut exhausted = 0;
    let mut seed = 100;
    while witnesses < MIN_WITNESSES {
        for p in common::corpus(seed, 40, 40) {
            let report = basic_triangulation_search(&p, CORPUS_BUDGET).unwrap();
            match report.outcome {
                SearchOutcome::Witness(t) => {
                    assert!(is_basic(&t) && validate_triangulation(&t, &p).is_valid());
                    let pts = p.lattice_points().unwrap();
                    let rhs = ub_final_rhs(
                        pts.all_points.len() as i64,
                        pts.boundary_points.len() as i64,
                        p.ambient_dim() as i64,
                    )
                    .unwrap();
                    assert!(p.normalized_volume() <= rhs, "bound violated by {:?}", p.vertices());
                    witnesses += 1;
                }
                SearchOutcome::ExhaustedNone => exhausted += 1,
                SearchOutcome::BudgetExceeded => panic!("corpus search over budget on {:?}", p.vertices()),
            }
        }
        seed += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed < LIMIT_SOUNDNESS, "took {elapsed:?}");
    format!("{witnesses} witnesses checked ({exhausted} exhausted without one), zero violations in {elapsed:?}")
}

fn criterion_6() -> String {
    let mut r = common::rng(6);
    let mut polygons = 0;
    let mut non_elementary = 0;
    while polygons < MIN_POLYGONS {
        let Some(p) = common::random_hull(&mut r, 2, 5) else { continue };
        polygons += 1;
        let pts = p.lattice_points().unwrap();
        let interior = pts.interior_points.len() as i64;
        let boundary = pts.boundary_points.len() as i64;
        assert_eq!(boundary, common::boundary_by_gcd(&p));
        let vol = p.normalized_volume().to_i64().unwrap();
        assert_eq!(vol, common::shoelace_twice_area(&p));
        assert_eq!(vol, 2 * interior + boundary - 2, "Pick on {:?}", p.vertices());
        if pts.all_points.len() > p.vertices().len() {
            non_elementary += 1;
            let report = screen(&p, DEFAULT_SEARCH_BUDGET);
            assert_eq!(report.verdict, Verdict::ClassC, "{:?}", p.vertices());
            let t = report.witness.expect("class_C carries a witness");
            assert!(is_basic(&t) && validate_triangulation(&t, &p).is_valid());
        }
    }
    format!("{polygons} polygons, {non_elementary} non-elementary all class_C, Pick exact on all")
}

fn criterion_7(corpus: &[GeometricTriangulation]) -> String {
    for t in corpus {
        let f = f_vector_of(t).unwrap();
        assert_eq!(f_from_h(&h_from_f(&f)).unwrap(), f);
        let bd = boundary_of(t).unwrap().f_vector().unwrap();
        assert_eq!(f_from_h(&h_from_f(&bd)).unwrap(), bd);
    }
    let polys = common::corpus(77, 30, 30);
    assert!(polys.len() >= MIN_ROUND_TRIPS);
    for p in &polys {
        let c = cone_over_polytope(p);
        let cert = gorenstein_vector(&c).unwrap();
        let (q, _) = support_polytope(&c, &cert).unwrap();
        assert_eq!(q.normalized_volume(), p.normalized_volume());
        let (a, b) = (p.lattice_points().unwrap(), q.lattice_points().unwrap());
        assert_eq!(a.all_points.len(), b.all_points.len());
        assert_eq!(a.boundary_points.len(), b.boundary_points.len());
    }
    format!("{} f-vector pairs and {} cone round trips", corpus.len() * 2, polys.len())
}

fn criterion_8() -> String {
    let p = obstructed_simplex();
    let report = basic_triangulation_search(&p, DEFAULT_SEARCH_BUDGET).unwrap();
    assert_eq!(report.outcome, SearchOutcome::ExhaustedNone);
    // Recorded node count for the default-budget run; the search is
    // deterministic.
    assert_eq!(report.nodes, 161);
    let screened = screen(&p, DEFAULT_SEARCH_BUDGET);
    assert_eq!(screened.verdict, Verdict::ClassBByBound);
    assert_eq!(screened.search_status, SearchStatus::NotRun);
    format!(
        "exhausted_none after {} of {} nodes ({} unimodular candidate cells)",
        report.nodes, DEFAULT_SEARCH_BUDGET, report.unimodular_cells
    )
}

fn run(n: usize, name: &str, f: impl FnOnce() -> String) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f));
    let elapsed = start.elapsed();
    match outcome {
        Ok(detail) => {
            println!("criterion {n} PASS  {name}: {detail} [{elapsed:.2?}]");
            true
        }
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            println!("criterion {n} FAIL  {name}: {msg} [{elapsed:.2?}]");
            false
        }
    }
}

fn main() {
    let build = Instant::now();
    let corpus = triangulation_corpus();
    let built_in = build.elapsed();

    let results = [
        run(1, "obstructed cone end to end", criterion_1),
        run(2, "cyclic top entry matches closed form", criterion_2),
        run(3, "boundary h-vector identity", || criterion_3(&corpus, built_in)),
        run(4, "ball face-number bounds", || criterion_4(&corpus)),
        run(5, "bound holds whenever a witness exists", criterion_5),
        run(6, "polygons are class_C or elementary", criterion_6),
        run(7, "round trips", || criterion_7(&corpus)),
        run(8, "obstructed simplex search exhausts", criterion_8),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
