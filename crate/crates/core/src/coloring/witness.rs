//! Extremal colorings certifying lower bounds for path/cycle Ramsey numbers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{split_coloring, Color, SplitSpec, TwoColoring};
use crate::embed::{find_embedding, SearchOptions, SearchResult};
use crate::error::{invalid, Error, Result};
use crate::template::{Kind, LooseTemplate};

/// Which structures the two colors must avoid: red avoids the first (length
/// `n`), blue avoids the second (length `m`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairKind {
    PP,
    PC,
    CC,
}

impl PairKind {
    pub fn kinds(self) -> (Kind, Kind) {
        match self {
            PairKind::PP => (Kind::Path, Kind::Path),
            PairKind::PC => (Kind::Path, Kind::Cycle),
            PairKind::CC => (Kind::Cycle, Kind::Cycle),
        }
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairKind::PP => "PP",
            PairKind::PC => "PC",
            PairKind::CC => "CC",
        })
    }
}

impl FromStr for PairKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "PP" => Ok(PairKind::PP),
            "PC" => Ok(PairKind::PC),
            "CC" => Ok(PairKind::CC),
            _ => Err(invalid(format!("unknown pair kind `{s}` (expected PP, PC or CC)"))),
        }
    }
}

/// A verified lower-bound coloring on `n_vertices = bound - 1` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub pair: PairKind,
    pub split: SplitSpec,
    pub red_target: LooseTemplate,
    pub blue_target: LooseTemplate,
    pub coloring: TwoColoring,
}

impl Witness {
    pub fn n_vertices(&self) -> u32 {
        self.coloring.n_vertices()
    }

    /// The Ramsey lower bound this coloring certifies (one more than its host size).
    pub fn bound(&self) -> u32 {
        self.n_vertices() + 1
    }
}

/// Host size `N` and red-core size `a` of the witness for `(k, n, m, pair)`.
pub fn witness_host_size(k: usize, n: usize, m: usize, pair: PairKind) -> Result<(u32, u32)> {
    if k < 3 {
        return Err(invalid(format!("uniformity k = {k} must be at least 3")));
    }
    let min_m = if pair == PairKind::PP { 2 } else { 3 };
    if m < min_m || n < m {
        return Err(invalid(format!(
            "need n >= m >= {min_m} for {pair}, got n = {n}, m = {m}"
        )));
    }
    let base = (k - 1) * n;
    let (host, a) = match pair {
        PairKind::PP | PairKind::PC => (base + (m + 1) / 2 - 1, base),
        PairKind::CC => (base + (m - 1) / 2 - 1, base - 1),
    };
    Ok((host as u32, a as u32))
}

/// Builds the split coloring avoiding a red first target and a blue second
/// target, and checks both avoidance claims with the embedder before
/// returning it.
pub fn lower_bound_witness(k: usize, n: usize, m: usize, pair: PairKind) -> Result<Witness> {
    let (host, a) = witness_host_size(k, n, m, pair)?;
    let (rk, bk) = pair.kinds();
    let red_target = LooseTemplate::new(rk, k, n)?;
    let blue_target = LooseTemplate::new(bk, k, m)?;
    let coloring = split_coloring(k, host, SplitSpec { a })?;
    for (color, t) in [(Color::Red, &red_target), (Color::Blue, &blue_target)] {
        match find_embedding(&coloring, color, t, SearchOptions::default())? {
            SearchResult::Absent => {}
            SearchResult::Found(e) => {
                return Err(Error::InternalAssertion(format!(
                    "witness for ({k}, {n}, {m}, {pair}) contains a {color} {t}: {:?}",
                    e.assignment
                )))
            }
            SearchResult::Unknown => unreachable!("unbudgeted search always decides"),
        }
    }
    Ok(Witness {
        k,
        n,
        m,
        pair,
        split: SplitSpec { a },
        red_target,
        blue_target,
        coloring,
    })
}
