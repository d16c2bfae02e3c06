//! Arrowing decisions `K^k_N -> (G, H)`, CNF export, Ramsey value scans,
//! derived value tables and certificate checking.

mod certificate;
mod copies;
mod dimacs;
mod solver;
mod table;

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{Color, TwoColoring};
use crate::combinat::edge_count;
use crate::embed::{find_embedding, SearchOptions, SearchResult};
use crate::error::{invalid, Error, Result};
use crate::template::LooseTemplate;

pub use certificate::{verify_certificate, Certificate, CertificateCheck, Payload};
pub use copies::{copies, Copies, CACHE_ENV};
pub use dimacs::{export_dimacs, model_to_coloring, parse_solver_output, CnfDocument, SolverAnswer};
pub use table::{
    compute_ramsey, cycle_value, derive_table, known_cycle_values, BaseValue, Provenance, RamseyClaim,
    RamseyComputation, ScanStep,
};

use solver::{Branching, Formula, Limits, Outcome, Search};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Sat,
    Unsat,
    Unknown,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Sat => "SAT",
            Status::Unsat => "UNSAT",
            Status::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_secs: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BranchOrder {
    LowestRank,
    HighestRank,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowOptions {
    /// Keep only lex-leader colorings under adjacent vertex transpositions.
    pub symmetry: bool,
    /// Worker threads; 1 runs the plain sequential search.
    pub threads: usize,
    /// Decision levels split into independent parallel jobs.
    pub split_depth: usize,
    pub order: BranchOrder,
    /// Color tried first at each decision.
    pub first: Color,
}

impl Default for ArrowOptions {
    fn default() -> Self {
        ArrowOptions {
            symmetry: false,
            threads: 1,
            split_depth: 8,
            order: BranchOrder::LowestRank,
            first: Color::Red,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub nodes: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub symmetry_cuts: u64,
    pub wall_ms: u64,
    pub variables: usize,
    pub clauses: usize,
}

#[derive(Clone, Debug)]
pub struct ArrowingVerdict {
    pub status: Status,
    /// A coloring avoiding both targets, present exactly when SAT.
    pub witness: Option<TwoColoring>,
    pub stats: Stats,
    pub budget: Budget,
}

impl ArrowingVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "status": self.status,
            "witness": self.witness.as_ref().map(|c| c.to_json(false)),
            "stats": self.stats,
            "budget": self.budget,
        })
    }
}

fn check_targets(k: usize, n_vertices: u32, red: &LooseTemplate, blue: &LooseTemplate) -> Result<()> {
    for t in [red, blue] {
        if t.k != k {
            return Err(Error::IncompatibleUniformity { expected: k, got: t.k });
        }
    }
    if k < 3 {
        return Err(invalid(format!("uniformity k = {k} must be at least 3")));
    }
    crate::combinat::check_host(n_vertices, k)
}

/// Checks that `c` has neither a red `red` nor a blue `blue`.
pub fn avoids(c: &TwoColoring, red: &LooseTemplate, blue: &LooseTemplate) -> Result<std::result::Result<(), String>> {
    for (color, t) in [(Color::Red, red), (Color::Blue, blue)] {
        if let SearchResult::Found(e) = find_embedding(c, color, t, SearchOptions::default())? {
            let edges: Vec<String> = e.edges().iter().map(|x| x.to_string()).collect();
            return Ok(Err(format!("{color} {t} found: {}", edges.join(" "))));
        }
    }
    Ok(Ok(()))
}

/// Decides whether every 2-coloring of `K^k_N` has a red `red` or a blue
/// `blue`. SAT means a coloring avoiding both exists and is returned.
pub fn decide_arrowing(
    k: usize,
    n_vertices: u32,
    red: &LooseTemplate,
    blue: &LooseTemplate,
    budget: Budget,
    options: ArrowOptions,
) -> Result<ArrowingVerdict> {
    check_targets(k, n_vertices, red, blue)?;
    if options.threads == 0 {
        return Err(invalid("threads must be at least 1"));
    }
    let start = Instant::now();
    let n_vars = edge_count(n_vertices, k);
    let rc = copies(n_vertices, red)?;
    let bc = copies(n_vertices, blue)?;
    let mut formula = Formula::new(n_vars, &rc, &bc);
    if options.symmetry {
        formula = formula.with_symmetry(k, n_vertices);
    }
    let limits = Limits {
        max_nodes: budget.max_nodes,
        deadline: budget.max_secs.map(|s| start + Duration::from_secs_f64(s.max(0.0))),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        exhausted: AtomicBool::new(false),
    };
    let branching = Branching {
        lowest_first: options.order == BranchOrder::LowestRank,
        first: options.first,
    };
    let (outcome, model, counters) = if options.threads == 1 {
        let mut s = Search::new(&formula, branching);
        let o = s.run(&limits);
        (o, (o == Outcome::Sat).then(|| s.model()), vec![s.counters])
    } else {
        parallel(&formula, branching, &limits, options)?
    };
    let status = match outcome {
        Outcome::Sat => Status::Sat,
        Outcome::Unsat => Status::Unsat,
        Outcome::Unknown => Status::Unknown,
    };
    let witness = match model {
        Some(m) => {
            let c = TwoColoring::from_rank_fn(k, n_vertices, |r| m[r])?;
            if let Err(why) = avoids(&c, red, blue)? {
                return Err(Error::InternalAssertion(format!("search model is not a witness: {why}")));
            }
            Some(c)
        }
        None => None,
    };
    let mut stats = Stats {
        variables: n_vars,
        clauses: formula.clause_count(),
        ..Stats::default()
    };
    for c in counters {
        stats.nodes += c.nodes;
        stats.propagations += c.propagations;
        stats.conflicts += c.conflicts;
        stats.symmetry_cuts += c.symmetry_cuts;
    }
    stats.wall_ms = start.elapsed().as_millis() as u64;
    Ok(ArrowingVerdict {
        status,
        witness,
        stats,
        budget,
    })
}

type Run = (Outcome, Option<Vec<Color>>, Vec<solver::Counters>);

fn parallel(formula: &Formula, branching: Branching, limits: &Limits, options: ArrowOptions) -> Result<Run> {
    let mut root = Search::new(formula, branching);
    let mut jobs = Vec::new();
    root.prefixes(options.split_depth, &mut jobs, &mut Vec::new());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.threads)
        .build()
        .map_err(|e| Error::InternalAssertion(format!("thread pool: {e}")))?;
    let results: Vec<(Outcome, Option<Vec<Color>>, solver::Counters)> = pool.install(|| {
        jobs.par_iter()
            .map(|prefix| {
                if limits.stop.load(Ordering::Relaxed) {
                    return (Outcome::Unknown, None, solver::Counters::default());
                }
                let mut s = Search::new(formula, branching);
                if !s.assume(prefix) {
                    return (Outcome::Unsat, None, s.counters);
                }
                let o = s.run(limits);
                if o == Outcome::Sat {
                    limits.stop.store(true, Ordering::Relaxed);
                    return (o, Some(s.model()), s.counters);
                }
                (o, None, s.counters)
            })
            .collect()
    });
    let mut counters = vec![root.counters];
    let mut model = None;
    let mut any_unknown = false;
    for (o, m, c) in results {
        counters.push(c);
        match o {
            Outcome::Sat if model.is_none() => model = m,
            Outcome::Unknown => any_unknown = true,
            _ => {}
        }
    }
    let outcome = if model.is_some() {
        Outcome::Sat
    } else if any_unknown || limits.exhausted.load(Ordering::Relaxed) {
        Outcome::Unknown
    } else {
        Outcome::Unsat
    };
    Ok((outcome, model, counters))
}

#[cfg(test)]
mod tests;
