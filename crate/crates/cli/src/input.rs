use std::path::Path;

use crepant_core::cone::{make_cone, Cone};
use crepant_core::lattice::IntegerVector;
use crepant_core::polytope::LatticePolytope;
use num_bigint::BigInt;
use serde::Deserialize;

use crate::CliError;

/// Integers may be written as numbers or, when they overflow 64 bits, as
/// decimal strings.
#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCone {
    rays: Vec<Vec<Entry>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolytope {
    vertices: Vec<Vec<Entry>>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    budget: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    cone: Option<RawCone>,
    polytope: Option<RawPolytope>,
    #[serde(default)]
    options: RawOptions,
}

#[derive(Clone, Debug)]
pub enum Geometry {
    Cone(Cone),
    Polytope(LatticePolytope),
}

#[derive(Clone, Debug)]
pub struct InputDocument {
    pub geometry: Geometry,
    pub budget: Option<u64>,
}

fn vectors(key: &str, raw: Vec<Vec<Entry>>) -> Result<Vec<IntegerVector>, CliError> {
    if raw.is_empty() {
        return Err(CliError::Input(format!("{key}: empty list")));
    }
    let dim = raw[0].len();
    raw.into_iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != dim {
                return Err(CliError::Input(format!(
                    "{key}[{i}]: expected {dim} entries, found {}",
                    row.len()
                )));
            }
            let entries = row
                .into_iter()
                .enumerate()
                .map(|(j, e)| match e {
                    Entry::Int(v) => Ok(BigInt::from(v)),
                    Entry::Text(s) => s
                        .trim()
                        .parse::<BigInt>()
                        .map_err(|_| CliError::Input(format!("{key}[{i}][{j}]: {s:?} is not an integer"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            IntegerVector::new(entries).map_err(|e| CliError::Input(format!("{key}[{i}]: {e}")))
        })
        .collect()
}

/// Parses a document. JSON is used for `.json` files, TOML otherwise.
pub fn parse_document(text: &str, json: bool) -> Result<InputDocument, CliError> {
    let raw: RawDocument = if json {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid JSON: {e}")))?
    } else {
        toml::from_str(text).map_err(|e| CliError::Input(format!("invalid TOML: {e}")))?
    };
    if raw.options.budget == Some(0) {
        return Err(CliError::Input("options.budget: must be positive".into()));
    }
    let geometry = match (raw.cone, raw.polytope) {
        (Some(c), None) => {
            let rays = vectors("cone.rays", c.rays)?;
            Geometry::Cone(make_cone(&rays).map_err(|e| CliError::Input(format!("cone.rays: {e}")))?)
        }
        (None, Some(p)) => {
            let vertices = vectors("polytope.vertices", p.vertices)?;
            Geometry::Polytope(
                LatticePolytope::new(vertices).map_err(|e| CliError::Input(format!("polytope.vertices: {e}")))?,
            )
        }
        (Some(_), Some(_)) => return Err(CliError::Input("both cone and polytope given; expected exactly one".into())),
        (None, None) => return Err(CliError::Input("missing geometry: expected cone.rays or polytope.vertices".into())),
    };
    Ok(InputDocument { geometry, budget: raw.options.budget })
}

pub fn read_document(path: &Path) -> Result<InputDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    parse_document(&text, json).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}
