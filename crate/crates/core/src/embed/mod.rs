//! Finding, counting and checking monochromatic loose paths and cycles.

mod maximal;
mod search;
mod verify;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, TwoColoring};
use crate::combinat::{rank_sorted, MAX_VERTICES};
use crate::error::{invalid, Error, Result};
use crate::template::{Edge, Kind, LooseTemplate, Vertex};

pub use maximal::{find_extension, is_maximal_wrt, Extension, MaximalityQuery};
pub use verify::{verify_edge_sequence, verify_embedding, Verification, VerifyFailure};

use search::{Engine, Exit, Flow, Plan};

/// The color an embedding claims for all of its edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColorClaim {
    Red,
    Blue,
    Any,
}

impl From<Color> for ColorClaim {
    fn from(c: Color) -> Self {
        match c {
            Color::Red => ColorClaim::Red,
            Color::Blue => ColorClaim::Blue,
        }
    }
}

/// An injective placement of a template in a host: template vertex `j` goes
/// to `assignment[j - 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Embedding {
    pub template: LooseTemplate,
    pub assignment: Vec<Vertex>,
    pub claimed_color: ColorClaim,
}

impl Embedding {
    /// Host vertex for template vertex `j` (1-based, reduced for cycles).
    pub fn vertex(&self, j: usize) -> Vertex {
        self.assignment[self.template.label(j) as usize - 1]
    }

    /// Host image of template edge `i`, in path order.
    pub fn edge_sequence(&self, i: usize) -> Vec<Vertex> {
        self.template
            .edge_sequence(i)
            .expect("index within template")
            .into_iter()
            .map(|j| self.assignment[j as usize - 1])
            .collect()
    }

    pub fn edge(&self, i: usize) -> Edge {
        Edge::new(self.edge_sequence(i)).expect("injective assignment")
    }

    pub fn edges(&self) -> Vec<Edge> {
        (1..=self.template.n).map(|i| self.edge(i)).collect()
    }

    pub fn first_of(&self, i: usize) -> Vertex {
        *self.edge_sequence(i).first().unwrap()
    }

    pub fn last_of(&self, i: usize) -> Vertex {
        *self.edge_sequence(i).last().unwrap()
    }

    pub fn vertex_mask(&self) -> u64 {
        self.assignment.iter().fold(0, |m, &v| m | 1 << (v - 1))
    }

    /// Rebuilds an embedding from an ordered list of host edges forming a
    /// loose path or cycle. Connector vertices become the template's shared
    /// vertices; interior vertices are placed in ascending order.
    pub fn from_edge_sequence(kind: Kind, edges: &[Edge], claimed_color: ColorClaim) -> Result<Embedding> {
        let n = edges.len();
        if n == 0 {
            return Err(Error::MalformedAssignment("empty edge sequence".into()));
        }
        let k = edges[0].len();
        let template = LooseTemplate::new(kind, k, n)?;
        if edges.iter().any(|e| e.len() != k) {
            return Err(Error::MalformedAssignment("edges of mixed size".into()));
        }
        let connector = |a: &Edge, b: &Edge| -> Result<Vertex> {
            match a.intersection(b).as_slice() {
                [v] => Ok(*v),
                other => Err(Error::MalformedAssignment(format!(
                    "consecutive edges {a} and {b} share {} vertices",
                    other.len()
                ))),
            }
        };
        let mut conns = Vec::with_capacity(n);
        for i in 0..n - 1 {
            conns.push(connector(&edges[i], &edges[i + 1])?);
        }
        if kind == Kind::Cycle {
            conns.push(connector(&edges[n - 1], &edges[0])?);
        }
        let mut assignment = vec![0; template.vertex_count()];
        for (i, e) in edges.iter().enumerate() {
            let first = match (kind, i) {
                (Kind::Cycle, 0) => conns[n - 1],
                (_, 0) => *e
                    .vertices()
                    .iter()
                    .find(|&&v| conns.first() != Some(&v) || n == 1)
                    .unwrap(),
                _ => conns[i - 1],
            };
            let last = if i < conns.len() {
                conns[i]
            } else {
                *e.vertices()
                    .iter()
                    .rev()
                    .find(|&&v| v != first)
                    .unwrap()
            };
            if first == last {
                return Err(Error::MalformedAssignment(format!(
                    "edge {e} uses one vertex as both connectors"
                )));
            }
            let base = i * (k - 1);
            assignment[base] = first;
            let interior = e.vertices().iter().filter(|&&v| v != first && v != last);
            for (off, &v) in interior.enumerate() {
                assignment[base + 1 + off] = v;
            }
            let last_pos = template.label(base + k) as usize - 1;
            assignment[last_pos] = last;
        }
        Ok(Embedding {
            template,
            assignment,
            claimed_color,
        })
    }
}

/// Outcome of a budgeted search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchResult {
    Found(Embedding),
    Absent,
    /// Node budget exhausted before the search could decide.
    Unknown,
}

impl SearchResult {
    pub fn found(self) -> Option<Embedding> {
        match self {
            SearchResult::Found(e) => Some(e),
            _ => None,
        }
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, SearchResult::Absent)
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchOptions<'a> {
    /// Partial assignment indexed by template vertex - 1.
    pub fixed: Option<&'a [Option<Vertex>]>,
    /// Host vertices the search may use (bit `v - 1`); `None` means all.
    pub allowed: Option<u64>,
    pub max_nodes: Option<u64>,
}

fn host_mask(n_vertices: u32) -> u64 {
    if n_vertices >= 64 {
        u64::MAX
    } else {
        (1u64 << n_vertices) - 1
    }
}

fn check_fixed(fixed: &[Option<Vertex>], t: &LooseTemplate, n_vertices: u32) -> Result<()> {
    if fixed.len() != t.vertex_count() {
        return Err(Error::MalformedAssignment(format!(
            "partial assignment has {} slots, template has {} vertices",
            fixed.len(),
            t.vertex_count()
        )));
    }
    let mut seen = 0u64;
    for &h in fixed.iter().flatten() {
        if h == 0 || h > n_vertices {
            return Err(Error::MalformedAssignment(format!(
                "host vertex {h} outside 1..={n_vertices}"
            )));
        }
        if seen & 1 << (h - 1) != 0 {
            return Err(Error::MalformedAssignment(format!("host vertex {h} fixed twice")));
        }
        seen |= 1 << (h - 1);
    }
    Ok(())
}

/// Searches for a copy of `t` whose edges all have `color`, extending the
/// optional partial assignment. The search is complete: `Absent` means no
/// such copy exists.
pub fn find_embedding(c: &TwoColoring, color: Color, t: &LooseTemplate, opts: SearchOptions<'_>) -> Result<SearchResult> {
    if t.k != c.k() {
        return Err(Error::IncompatibleUniformity {
            expected: c.k(),
            got: t.k,
        });
    }
    let n = c.n_vertices();
    if let Some(f) = opts.fixed {
        check_fixed(f, t, n)?;
    }
    let allowed = opts.allowed.unwrap_or(u64::MAX) & host_mask(n);
    if (allowed.count_ones() as usize) < t.vertex_count() {
        return Ok(SearchResult::Absent);
    }
    // vertices lying on no edge of this color can never be used
    let active = active_vertices(c, color, allowed);
    let reserved = opts
        .fixed
        .map(|f| f.iter().flatten().fold(0u64, |m, &h| m | 1 << (h - 1)))
        .unwrap_or(0);
    if reserved & !active != 0 || ((active & allowed).count_ones() as usize) < t.vertex_count() {
        return Ok(SearchResult::Absent);
    }
    let plan = Plan::new(t, opts.fixed);
    let twins = c.twin_classes();
    let mut engine = Engine::new(
        &plan,
        n,
        allowed & active,
        opts.fixed,
        Some(twins.as_slice()),
        opts.max_nodes,
        |e: &[Vertex]| c.color_sorted(e) == color,
    );
    let mut found = None;
    let exit = engine.run(&mut |a: &[Vertex]| {
        found = Some(a.to_vec());
        Flow::Stop
    });
    Ok(match (exit, found) {
        (_, Some(a)) => SearchResult::Found(Embedding {
            template: *t,
            assignment: a,
            claimed_color: color.into(),
        }),
        (Exit::Budget, None) => SearchResult::Unknown,
        _ => SearchResult::Absent,
    })
}

fn active_vertices(c: &TwoColoring, color: Color, allowed: u64) -> u64 {
    let k = c.k();
    let mut mask = 0u64;
    let full = allowed;
    for r in c.ranks_of(color) {
        let e = crate::combinat::unrank(r, k);
        let m = e.iter().fold(0u64, |m, &v| m | 1 << (v - 1));
        if m & !allowed == 0 {
            mask |= m;
            if mask == full {
                break;
            }
        }
    }
    mask
}

/// All distinct copies of `t` in the complete host `K^k_N`, each as the
/// ascending list of its edges' colex ranks. Copies are distinct edge sets.
pub fn enumerate_copies(n_vertices: u32, k: usize, t: &LooseTemplate) -> Result<Vec<Vec<u32>>> {
    if t.k != k {
        return Err(Error::IncompatibleUniformity { expected: k, got: t.k });
    }
    if n_vertices > MAX_VERTICES {
        return Err(invalid(format!("host size {n_vertices} exceeds {MAX_VERTICES}")));
    }
    let mut out = Vec::new();
    if t.vertex_count() > n_vertices as usize {
        return Ok(out);
    }
    let plan = Plan::new(t, None);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut engine = Engine::new(&plan, n_vertices, host_mask(n_vertices), None, None, None, |_: &[Vertex]| true);
    let mut buf = Vec::with_capacity(k);
    engine.run(&mut |a: &[Vertex]| {
        let mut ranks: Vec<u32> = plan
            .edges
            .iter()
            .map(|e| {
                buf.clear();
                buf.extend(e.iter().map(|&p| a[p]));
                buf.sort_unstable();
                rank_sorted(&buf) as u32
            })
            .collect();
        ranks.sort_unstable();
        if seen.insert(ranks.clone()) {
            out.push(ranks);
        }
        Flow::Continue
    });
    Ok(out)
}

/// Number of distinct sub-hypergraphs of `K^k_N` isomorphic to `t`.
pub fn count_copies(n_vertices: u32, k: usize, t: &LooseTemplate) -> Result<usize> {
    Ok(enumerate_copies(n_vertices, k, t)?.len())
}
