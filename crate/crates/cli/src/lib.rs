//! The `crepant` command-line tool.
//!
//! Exit codes: 0 on a completed result, 2 on bad input, 3 when a budget ran
//! out before a verdict, 1 on anything else.

pub mod input;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use crepant_core::cone::{gorenstein_vector, support_polytope, Flattening};
use crepant_core::fh::h_from_f;
use crepant_core::polytope::{LatticePolytope, PolytopeError};
use crepant_core::screening::{screen, screen_cone, ub_final_rhs, Verdict};
use crepant_core::triangulation::{
    basic_triangulation_search, f_vector_of, full_triangulation, is_basic, SearchOutcome, TriangulationError,
    DEFAULT_SEARCH_BUDGET,
};
use serde_json::{json, Map, Value};
use thiserror::Error;

use input::{read_document, Geometry, InputDocument};

/// Overrides the built-in search budget when neither `--budget` nor
/// `options.budget` is given.
pub const BUDGET_ENV: &str = "CREPANT_BUDGET";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
    #[error(transparent)]
    Other(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Other(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "crepant", version, about = "Screen Gorenstein toric cones for crepant resolutions")]
pub struct Cli {
    /// Include the evidence chain (certificate, flattening, facets, point lists).
    #[arg(long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify the input: smooth, terminal_A, class_B_*, class_C or inconclusive.
    Screen {
        file: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Count lattice points of the support polytope.
    Points { file: PathBuf },
    /// Normalized volume of the support polytope.
    Volume { file: PathBuf },
    /// Upper bound on the volume of a polytope with a basic triangulation.
    Bound { file: PathBuf },
    /// Face numbers of the placing triangulation on all lattice points.
    Fvector { file: PathBuf },
    /// Placing triangulation, or with --exhaustive a basic triangulation search.
    Triangulate {
        file: PathBuf,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        budget: Option<u64>,
    },
}

pub struct Output {
    pub document: Value,
    pub exit_code: i32,
}

fn env_budget() -> Result<Option<u64>, CliError> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => match s.trim().parse::<u64>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Input(format!("{BUDGET_ENV}: {s:?} is not a positive integer"))),
        },
        Err(_) => Ok(None),
    }
}

/// Flag, then file, then environment, then the built-in default.
fn resolve_budget(flag: Option<u64>, doc: &InputDocument) -> Result<u64, CliError> {
    if flag == Some(0) {
        return Err(CliError::Input("--budget: must be positive".into()));
    }
    if let Some(b) = flag.or(doc.budget) {
        return Ok(b);
    }
    Ok(env_budget()?.unwrap_or(DEFAULT_SEARCH_BUDGET))
}

fn support(doc: &InputDocument) -> Result<(LatticePolytope, Option<Flattening>), CliError> {
    match &doc.geometry {
        Geometry::Polytope(p) => Ok((p.clone(), None)),
        Geometry::Cone(c) => {
            let cert = gorenstein_vector(c).map_err(|e| CliError::Input(format!("cone is not Gorenstein: {e}")))?;
            let (p, f) = support_polytope(c, &cert).map_err(|e| CliError::Input(e.to_string()))?;
            Ok((p, Some(f)))
        }
    }
}

fn polytope_error(e: PolytopeError) -> CliError {
    match e {
        PolytopeError::PointBudgetExceeded { .. } => CliError::Budget(e.to_string()),
        other => CliError::Other(other.into()),
    }
}

fn triangulation_error(e: TriangulationError) -> CliError {
    match e {
        TriangulationError::Polytope(p) => polytope_error(p),
        other => CliError::Other(other.into()),
    }
}

fn evidence(out: &mut Map<String, Value>, p: &LatticePolytope, f: &Option<Flattening>) {
    if let Some(f) = f {
        out.insert("flattening".into(), report::flattening(f));
    }
    out.insert("support_vertices".into(), report::vectors(p.vertices()));
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let verbose = cli.verbose;
    let mut out = Map::new();
    let mut exit_code = 0;
    match &cli.command {
        Command::Screen { file, budget } => {
            let doc = read_document(file)?;
            let budget = resolve_budget(*budget, &doc)?;
            let r = match &doc.geometry {
                Geometry::Polytope(p) => screen(p, budget),
                Geometry::Cone(c) => screen_cone(c, budget).map_err(|e| CliError::Input(e.to_string()))?,
            };
            if r.verdict == Verdict::Inconclusive {
                exit_code = 3;
            }
            return Ok(Output { document: report::screening(&r, verbose), exit_code });
        }
        Command::Points { file } => {
            let doc = read_document(file)?;
            let (p, f) = support(&doc)?;
            let pts = p.lattice_points().map_err(polytope_error)?;
            out.insert("total".into(), json!(pts.all_points.len()));
            out.insert("boundary".into(), json!(pts.boundary_points.len()));
            out.insert("interior".into(), json!(pts.interior_points.len()));
            if verbose {
                evidence(&mut out, &p, &f);
                out.insert("boundary_points".into(), report::vectors(&pts.boundary_points));
                out.insert("interior_points".into(), report::vectors(&pts.interior_points));
            }
        }
        Command::Volume { file } => {
            let doc = read_document(file)?;
            let (p, f) = support(&doc)?;
            out.insert("volume".into(), report::int(&p.normalized_volume()));
            out.insert("d".into(), json!(p.ambient_dim()));
            if verbose {
                evidence(&mut out, &p, &f);
            }
        }
        Command::Bound { file } => {
            let doc = read_document(file)?;
            let (p, f) = support(&doc)?;
            let pts = p.lattice_points().map_err(polytope_error)?;
            let total = pts.all_points.len() as i64;
            let boundary = pts.boundary_points.len() as i64;
            let rhs = ub_final_rhs(total, boundary, p.ambient_dim() as i64).map_err(|e| CliError::Other(e.into()))?;
            let volume = p.normalized_volume();
            out.insert("holds".into(), json!(volume <= rhs));
            out.insert("rhs".into(), report::int(&rhs));
            out.insert("volume".into(), report::int(&volume));
            out.insert("points_total".into(), json!(total));
            out.insert("points_boundary".into(), json!(boundary));
            out.insert("d".into(), json!(p.ambient_dim()));
            if verbose {
                evidence(&mut out, &p, &f);
            }
        }
        Command::Fvector { file } => {
            let doc = read_document(file)?;
            let (p, f) = support(&doc)?;
            let t = full_triangulation(&p).map_err(triangulation_error)?;
            let fv = f_vector_of(&t).map_err(triangulation_error)?;
            let hv = h_from_f(&fv);
            out.insert("f_vector".into(), Value::Array(fv.counts().iter().map(report::int).collect()));
            out.insert("h_vector".into(), Value::Array(hv.entries().iter().map(report::int).collect()));
            if verbose {
                evidence(&mut out, &p, &f);
                out.insert("cells".into(), report::cell_coordinates(&t));
            }
        }
        Command::Triangulate { file, exhaustive, budget } => {
            let doc = read_document(file)?;
            let (p, f) = support(&doc)?;
            if *exhaustive {
                let budget = resolve_budget(*budget, &doc)?;
                let s = basic_triangulation_search(&p, budget).map_err(triangulation_error)?;
                let (status, witness) = match &s.outcome {
                    SearchOutcome::Witness(t) => ("witness", report::cell_coordinates(t)),
                    SearchOutcome::ExhaustedNone => ("exhausted_none", Value::Null),
                    SearchOutcome::BudgetExceeded => {
                        exit_code = 3;
                        ("budget_exceeded", Value::Null)
                    }
                };
                out.insert("status".into(), json!(status));
                out.insert("witness".into(), witness);
                out.insert("nodes".into(), json!(s.nodes));
                out.insert("budget".into(), json!(budget));
                out.insert("unimodular_cells".into(), json!(s.unimodular_cells));
            } else {
                let t = full_triangulation(&p).map_err(triangulation_error)?;
                out.insert("cells".into(), report::cell_coordinates(&t));
                out.insert("basic".into(), json!(is_basic(&t)));
            }
            if verbose {
                evidence(&mut out, &p, &f);
            }
        }
    }
    Ok(Output { document: Value::Object(out), exit_code })
}

pub fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}
