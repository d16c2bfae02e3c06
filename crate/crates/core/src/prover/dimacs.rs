//! DIMACS CNF export of an arrowing instance and reading solver answers back.
//!
//! Variable `v` is the edge of colex rank `v - 1`; a true variable is a red
//! edge. Each red-target copy gives a clause of negative literals, each
//! blue-target copy a clause of positive literals.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{check_targets, copies};
use crate::coloring::{Color, TwoColoring};
use crate::combinat::{edge_count, unrank};
use crate::error::{invalid, Result};
use crate::template::{LooseTemplate, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfDocument {
    pub variables: usize,
    pub clauses: usize,
    pub red_clauses: usize,
    pub blue_clauses: usize,
    /// SHA-256 of the variable map, hex.
    pub varmap_sha256: String,
    /// The full `.cnf` text.
    pub text: String,
    /// JSON mapping variables to edges.
    pub sidecar: serde_json::Value,
}

impl CnfDocument {
    pub fn header(&self) -> String {
        format!("p cnf {} {}", self.variables, self.clauses)
    }
}

fn varmap(n_vertices: u32, k: usize) -> (Vec<Vec<Vertex>>, String) {
    let edges: Vec<Vec<Vertex>> = (0..edge_count(n_vertices, k)).map(|r| unrank(r, k)).collect();
    let mut text = String::new();
    for (i, e) in edges.iter().enumerate() {
        let vs: Vec<String> = e.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(text, "{} {}", i + 1, vs.join(","));
    }
    (edges, text)
}

pub fn export_dimacs(k: usize, n_vertices: u32, red: &LooseTemplate, blue: &LooseTemplate) -> Result<CnfDocument> {
    check_targets(k, n_vertices, red, blue)?;
    let rc = copies(n_vertices, red)?;
    let bc = copies(n_vertices, blue)?;
    let variables = edge_count(n_vertices, k);
    let (edges, map) = varmap(n_vertices, k);
    let digest = hex::encode(Sha256::digest(map.as_bytes()));
    let clauses = rc.len() + bc.len();
    let mut text = String::new();
    let _ = writeln!(text, "c ramsey-lab arrowing k={k} n_vertices={n_vertices} red={red} blue={blue}");
    let _ = writeln!(text, "c variable v = edge of colex rank v-1, true = red");
    let _ = writeln!(text, "c varmap-sha256 {digest}");
    let _ = writeln!(text, "p cnf {variables} {clauses}");
    for (list, sign) in [(&rc, "-"), (&bc, "")] {
        for copy in list.iter() {
            for &r in copy {
                let _ = write!(text, "{sign}{} ", r + 1);
            }
            text.push_str("0\n");
        }
    }
    let sidecar = serde_json::json!({
        "format": "ramsey-lab-varmap",
        "k": k,
        "n_vertices": n_vertices,
        "red_target": red.to_string(),
        "blue_target": blue.to_string(),
        "variables": variables,
        "clauses": clauses,
        "red_clauses": rc.len(),
        "blue_clauses": bc.len(),
        "true_means": "red",
        "varmap_sha256": digest,
        "edges": edges,
    });
    Ok(CnfDocument {
        variables,
        clauses,
        red_clauses: rc.len(),
        blue_clauses: bc.len(),
        varmap_sha256: digest,
        text,
        sidecar,
    })
}

/// What an external solver reported, in the SAT competition output format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "UPPERCASE")]
pub enum SolverAnswer {
    Satisfiable { model: Vec<i64> },
    Unsatisfiable,
    Unknown,
}

/// Parses `s ...` and `v ...` lines.
pub fn parse_solver_output(text: &str) -> Result<SolverAnswer> {
    let mut status = None;
    let mut model = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("v ") {
            for tok in rest.split_whitespace() {
                let lit: i64 = tok.parse().map_err(|_| invalid(format!("bad literal `{tok}`")))?;
                if lit != 0 {
                    model.push(lit);
                }
            }
        }
    }
    match status.as_deref() {
        Some("SATISFIABLE") => Ok(SolverAnswer::Satisfiable { model }),
        Some("UNSATISFIABLE") => Ok(SolverAnswer::Unsatisfiable),
        Some("UNKNOWN") | None => Ok(SolverAnswer::Unknown),
        Some(other) => Err(invalid(format!("unknown solver status `{other}`"))),
    }
}

/// Turns a model over the exported variables into a coloring. Unmentioned
/// variables are blue.
pub fn model_to_coloring(k: usize, n_vertices: u32, model: &[i64]) -> Result<TwoColoring> {
    let n = edge_count(n_vertices, k) as i64;
    let mut c = TwoColoring::uniform(k, n_vertices, Color::Blue)?;
    for &lit in model {
        if lit == 0 || lit.abs() > n {
            return Err(invalid(format!("literal {lit} outside 1..={n}")));
        }
        if lit > 0 {
            c.set_rank(lit as usize - 1, Color::Red);
        }
    }
    Ok(c)
}
