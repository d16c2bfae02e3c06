//! Constructive procedures that turn existence arguments into checkable
//! objects. Every result is re-validated against the coloring before it is
//! returned; a step that should succeed but does not is reported as
//! [`Error::ProofGap`] together with a JSON dump of the instance.

mod absorb;
mod configuration;
pub mod instances;
mod join;
mod lift;
mod pairs;
mod shorter_cycle;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, TwoColoring};
use crate::embed::{find_embedding, Embedding, SearchOptions, SearchResult};
use crate::error::{Error, Result};
use crate::template::{Edge, LooseTemplate, Vertex};

pub use absorb::{absorb_blue_path, validate_absorption, AbsorptionResult};
pub use configuration::{
    find_good_configuration, validate_configuration, ConfigurationCase, ConfigurationReport, GoodConfiguration,
};
pub use join::{join_red_cycles, JoinOutcome, JoinStep, JoinTrace, TestedEdge};
pub use lift::lift_blue_c4;
pub use pairs::{
    adjacent_bichromatic_pair, adjacent_bichromatic_pair_within, disjoint_bichromatic_pairs, find_disjoint_pairs,
    validate_pair, BichromaticPair, PairSearch,
};
pub use shorter_cycle::{blue_cycle_from_red_shorter_cycle, case2_blue_cycle, ShorterCycleCase, ShorterCycleOutcome};

/// Node budget for the global "no monochromatic copy" hypothesis checks.
pub const DEFAULT_HYPOTHESIS_BUDGET: u64 = 2_000_000;

/// How strongly a result is backed. A budgeted hypothesis check that ran
/// out of nodes downgrades the claim to the instance at hand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    LemmaCertified,
    InstanceCertified,
}

pub(crate) fn edge(vs: &[Vertex]) -> Edge {
    Edge::from_slice(vs).expect("distinct positive labels")
}

pub(crate) fn color_of(c: &TwoColoring, vs: &[Vertex]) -> Color {
    let mut s = vs.to_vec();
    s.sort_unstable();
    c.color_sorted(&s)
}

pub(crate) fn proof_gap(context: &str, detail: impl Into<String>, instance: serde_json::Value) -> Error {
    Error::ProofGap {
        context: context.into(),
        detail: detail.into(),
        instance: instance.to_string(),
    }
}

/// Checks that `c` has no `color` copy of `t` within `budget` nodes.
pub(crate) fn check_absent(
    c: &TwoColoring,
    color: Color,
    t: &LooseTemplate,
    budget: Option<u64>,
    what: &str,
) -> Result<Certification> {
    let opts = SearchOptions {
        max_nodes: budget,
        ..Default::default()
    };
    match find_embedding(c, color, t, opts)? {
        SearchResult::Absent => Ok(Certification::LemmaCertified),
        SearchResult::Unknown => Ok(Certification::InstanceCertified),
        SearchResult::Found(e) => Err(Error::HypothesisViolation(format!(
            "{what}: found a {color} {t} with edges {}",
            show_edges(&e.edges())
        ))),
    }
}

pub(crate) fn show_edges(edges: &[Edge]) -> String {
    edges.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

pub(crate) fn require_color(c: &TwoColoring, e: &Embedding, color: Color, what: &str) -> Result<()> {
    let mut e = e.clone();
    e.claimed_color = color.into();
    crate::embed::verify_embedding(c, &e)
        .map_err(|why| Error::HypothesisViolation(format!("{what} is not a {color} copy: {why}")))
}

#[cfg(test)]
mod tests;
