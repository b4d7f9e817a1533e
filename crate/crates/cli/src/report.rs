//! JSON rendering. `serde_json::Map` is ordered by key, which keeps output
//! byte-for-byte stable.

use crepant_core::cone::{Flattening, NotGorenstein};
use crepant_core::lattice::IntegerVector;
use crepant_core::polytope::LatticePolytope;
use crepant_core::screening::{GorensteinStatus, ScreenInput, ScreeningReport};
use crepant_core::triangulation::GeometricTriangulation;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

/// Numbers that fit in an `i64` are emitted as JSON numbers, larger ones as
/// decimal strings.
pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn vector(v: &IntegerVector) -> Value {
    Value::Array(v.entries().iter().map(int).collect())
}

pub fn vectors(vs: &[IntegerVector]) -> Value {
    Value::Array(vs.iter().map(vector).collect())
}

pub fn opt_int(x: &Option<BigInt>) -> Value {
    x.as_ref().map_or(Value::Null, int)
}

pub fn cells(t: &GeometricTriangulation) -> Value {
    json!(t.cells)
}

/// Cells as vertex coordinates, so they can be read without the point list.
pub fn cell_coordinates(t: &GeometricTriangulation) -> Value {
    Value::Array(
        t.cells
            .iter()
            .map(|c| Value::Array(c.iter().map(|&i| vector(&t.points[i])).collect()))
            .collect(),
    )
}

pub fn facets(p: &LatticePolytope) -> Value {
    Value::Array(
        p.facet_halfspaces()
            .iter()
            .map(|h| json!({ "normal": vector(&h.normal), "offset": int(&h.offset) }))
            .collect(),
    )
}

pub fn flattening(f: &Flattening) -> Value {
    json!({ "base_point": vector(&f.base_point), "basis": vectors(&f.basis) })
}

fn not_gorenstein(reason: &NotGorenstein) -> Value {
    let kind = match reason {
        NotGorenstein::NoSolution => "no_solution",
        NotGorenstein::NonIntegral(_) => "non_integral",
        NotGorenstein::NonPrimitive(_) => "non_primitive",
    };
    json!({ "failure": kind, "message": reason.to_string() })
}

pub fn screening(r: &ScreeningReport, verbose: bool) -> Value {
    let mut out = Map::new();
    let (kind, input) = match &r.input {
        ScreenInput::Cone(rays) => ("cone", rays),
        ScreenInput::Polytope(vs) => ("polytope", vs),
    };
    out.insert("input".into(), json!({ "kind": kind, "vectors": vectors(input) }));
    let gorenstein = match &r.gorenstein {
        GorensteinStatus::Certificate(c) => json!({ "m_sigma": vector(&c.m_sigma) }),
        GorensteinStatus::Failed(reason) => not_gorenstein(reason),
    };
    out.insert("gorenstein".into(), gorenstein);
    out.insert("d".into(), json!(r.d));
    out.insert("volume".into(), opt_int(&r.volume));
    out.insert("points_total".into(), json!(r.points_total));
    out.insert("points_boundary".into(), json!(r.points_boundary));
    out.insert("bound_rhs".into(), opt_int(&r.bound_rhs));
    out.insert("bound_holds".into(), json!(r.bound_holds));
    out.insert("verdict".into(), json!(r.verdict.as_str()));
    out.insert("witness".into(), r.witness.as_ref().map_or(Value::Null, cell_coordinates));
    out.insert("search".into(), json!({ "status": r.search_status.as_str(), "nodes": r.search_nodes }));
    out.insert("limiting_stage".into(), json!(r.limiting_stage.map(|s| s.as_str())));
    if verbose {
        let mut evidence = Map::new();
        if let Some(f) = &r.flattening {
            evidence.insert("flattening".into(), flattening(f));
        }
        if let Some(p) = &r.polytope {
            evidence.insert("support_vertices".into(), vectors(p.vertices()));
            evidence.insert("facets".into(), facets(p));
        }
        out.insert("evidence".into(), Value::Object(evidence));
    }
    Value::Object(out)
}
