#![allow(dead_code)]

use std::collections::BTreeSet;

use crepant_core::lattice::IntegerVector;
use crepant_core::polytope::LatticePolytope;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const MAX_POINTS: usize = 12;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn lattice_count(p: &LatticePolytope) -> usize {
    p.lattice_points().map(|s| s.all_points.len()).unwrap_or(usize::MAX)
}

/// Hull of a few random points in a small box, kept if it is
/// full-dimensional with at most `MAX_POINTS` lattice points.
pub fn random_hull(rng: &mut ChaCha8Rng, dim: usize, side: i64) -> Option<LatticePolytope> {
    let n = rng.gen_range(dim + 1..=dim + 4);
    let pts: Vec<IntegerVector> = (0..n)
        .map(|_| IntegerVector::from_i64(&(0..dim).map(|_| rng.gen_range(0..=side)).collect::<Vec<_>>()))
        .collect();
    let p = LatticePolytope::hull_of(&pts).ok()?;
    (lattice_count(&p) <= MAX_POINTS).then_some(p)
}

/// Simplices `{0, e_1, ..., e_{d-1}, v}` with a tall last coordinate: few
/// lattice points, large volume.
pub fn random_tall_simplex(rng: &mut ChaCha8Rng, dim: usize) -> Option<LatticePolytope> {
    let mut verts = vec![IntegerVector::zero(dim)];
    for i in 0..dim - 1 {
        verts.push(IntegerVector::unit(dim, i));
    }
    let mut apex: Vec<i64> = (0..dim - 1).map(|_| rng.gen_range(-10..=10)).collect();
    apex.push(rng.gen_range(1..=24));
    verts.push(IntegerVector::from_i64(&apex));
    let p = LatticePolytope::new(verts).ok()?;
    (lattice_count(&p) <= MAX_POINTS).then_some(p)
}

/// A deduplicated, deterministic mix of polygons and 3-polytopes.
pub fn corpus(seed: u64, polygons: usize, solids: usize) -> Vec<LatticePolytope> {
    let mut r = rng(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |p: LatticePolytope, out: &mut Vec<LatticePolytope>| {
        let mut key = p.vertices().to_vec();
        key.sort();
        if seen.insert(key) {
            out.push(p);
        }
    };
    let mut n2 = 0;
    while n2 < polygons {
        if let Some(p) = random_hull(&mut r, 2, 4) {
            push(p, &mut out);
            n2 += 1;
        }
    }
    let mut n3 = 0;
    while n3 < solids {
        let p = if n3 % 3 == 2 { random_tall_simplex(&mut r, 3) } else { random_hull(&mut r, 3, 2) };
        if let Some(p) = p {
            push(p, &mut out);
            n3 += 1;
        }
    }
    out
}

/// Twice the area of a polygon by the shoelace formula, vertices sorted by
/// angle around their mean.
pub fn shoelace_twice_area(p: &LatticePolytope) -> i64 {
    let vs: Vec<(f64, f64)> = p
        .vertices()
        .iter()
        .map(|v| (v[0].to_f64().unwrap(), v[1].to_f64().unwrap()))
        .collect();
    let n = vs.len() as f64;
    let (cx, cy) = vs.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x / n, b + y / n));
    let mut order: Vec<usize> = (0..vs.len()).collect();
    order.sort_by(|&a, &b| {
        let ta = (vs[a].1 - cy).atan2(vs[a].0 - cx);
        let tb = (vs[b].1 - cy).atan2(vs[b].0 - cx);
        ta.partial_cmp(&tb).unwrap()
    });
    let ints: Vec<(i64, i64)> =
        order.iter().map(|&i| (p.vertices()[i][0].to_i64().unwrap(), p.vertices()[i][1].to_i64().unwrap())).collect();
    let mut s = 0;
    for k in 0..ints.len() {
        let (x0, y0) = ints[k];
        let (x1, y1) = ints[(k + 1) % ints.len()];
        s += x0 * y1 - x1 * y0;
    }
    s.abs()
}

/// Lattice points on the boundary of a polygon, counted edge by edge.
pub fn boundary_by_gcd(p: &LatticePolytope) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 { a.abs() } else { gcd(b, a % b) }
    }
    p.facet_halfspaces()
        .iter()
        .map(|h| {
            let on: Vec<&IntegerVector> = p.vertices().iter().filter(|v| h.slack(v) == 0.into()).collect();
            let dx = (&on[1][0] - &on[0][0]).to_i64().unwrap();
            let dy = (&on[1][1] - &on[0][1]).to_i64().unwrap();
            gcd(dx, dy)
        })
        .sum()
}
