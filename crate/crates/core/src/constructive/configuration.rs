//! Blue two-edge configurations hanging off two consecutive edges of a
//! maximal red 3-uniform path.
//!
//! Path vertices are numbered `v_1, v_2, ...` so that edge `i` is
//! `{v_{2i-1}, v_{2i}, v_{2i+1}}`. A configuration is a blue loose path
//! `{x, a1, a2}{a2, a3, y}` with both ends in `W` and interior
//! `S = {a1, a2, a3}` taken from the window around edges `i` and `i + 1`.

use serde::{Deserialize, Serialize};

use super::{color_of, edge, proof_gap, require_color};
use crate::coloring::{Color, TwoColoring};
use crate::embed::{is_maximal_wrt, Embedding, MaximalityQuery};
use crate::error::{invalid, Error, Result};
use crate::template::{Edge, Kind, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GoodConfiguration {
    pub x: Vertex,
    pub a1: Vertex,
    pub a2: Vertex,
    pub a3: Vertex,
    pub y: Vertex,
    /// Index `i` of the first of the two path edges.
    pub anchor: usize,
    /// A vertex of `e_{i+1} \ e_i` the configuration does not use.
    pub avoided: Vertex,
}

impl GoodConfiguration {
    pub fn edges(&self) -> [Edge; 2] {
        [edge(&[self.x, self.a1, self.a2]), edge(&[self.a2, self.a3, self.y])]
    }

    pub fn interior(&self) -> [Vertex; 3] {
        [self.a1, self.a2, self.a3]
    }

    pub fn ends(&self) -> [Vertex; 2] {
        [self.x, self.y]
    }
}

/// Which branch of the case analysis produced the configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConfigurationCase {
    /// `{u, v_2i, x}` is red for some `x` in `W`.
    RedAtStart,
    /// `{v_2i+2, v_2i+3, x}` is red for some `x` in `W`.
    RedAtEnd,
    /// Some edge through `y` joining the window is blue.
    BlueCross,
    /// All cross edges are red, which forces `{v_2i, v_2i+3, y}` blue.
    AllCrossRed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigurationReport {
    pub configuration: GoodConfiguration,
    pub case: ConfigurationCase,
    /// The `W` vertex that is an end of no available configuration, if any.
    pub excluded: Option<Vertex>,
}

struct Window {
    v: Vec<Vertex>,
}

impl Window {
    fn new(p: &Embedding) -> Window {
        let mut v = vec![0];
        v.extend_from_slice(&p.assignment);
        Window { v }
    }

    /// `v_j`, 1-based.
    fn at(&self, j: usize) -> Vertex {
        self.v[j]
    }

    /// `A_i`: the first vertex of the path for `i = 1`, otherwise `e_{i-1}` minus its first vertex.
    fn a_set(&self, i: usize) -> Vec<Vertex> {
        if i == 1 {
            vec![self.at(1)]
        } else {
            vec![self.at(2 * i - 2), self.at(2 * i - 1)]
        }
    }

    fn edge_set(&self, i: usize) -> [Vertex; 3] {
        [self.at(2 * i - 1), self.at(2 * i), self.at(2 * i + 1)]
    }
}

fn instance(c: &TwoColoring, p: &Embedding, w: &[Vertex], i: usize, u: Vertex) -> serde_json::Value {
    serde_json::json!({
        "coloring": c.to_json(false),
        "path": p.assignment,
        "w": w,
        "anchor": i,
        "u": u,
    })
}

pub(crate) fn check_shape(c: &TwoColoring, p: &Embedding, w: &[Vertex], i: usize, u: Vertex) -> Result<()> {
    if c.k() != 3 || p.template.k != 3 {
        return Err(invalid("configurations are defined for 3-uniform hosts"));
    }
    if p.template.kind != Kind::Path {
        return Err(invalid("the host structure must be a loose path"));
    }
    let n = p.template.n;
    if i == 0 || i >= n {
        return Err(Error::HypothesisViolation(format!(
            "anchor {i} must satisfy 1 <= i <= n - 1 = {}",
            n.saturating_sub(1)
        )));
    }
    require_color(c, p, Color::Red, "the path")?;
    if w.len() < 3 {
        return Err(Error::HypothesisViolation(format!("|W| = {} but at least 3 are needed", w.len())));
    }
    if !Window::new(p).a_set(i).contains(&u) {
        return Err(Error::HypothesisViolation(format!("u = {u} is not in A_{i}")));
    }
    Ok(())
}

/// All configurations the case analysis provides at anchor `i`. Edges the
/// analysis predicts to be blue are checked; a red one is a proof gap.
/// Assumes maximality has been established by the caller.
pub(crate) fn candidates(
    c: &TwoColoring,
    p: &Embedding,
    w: &[Vertex],
    i: usize,
    u: Vertex,
) -> Result<(ConfigurationCase, Vec<GoodConfiguration>)> {
    let win = Window::new(p);
    let (v0, v1, v2, v3) = (win.at(2 * i), win.at(2 * i + 1), win.at(2 * i + 2), win.at(2 * i + 3));
    let red = |s: [Vertex; 3]| color_of(c, &s) == Color::Red;
    let predicted = |s: [Vertex; 3], why: &str| -> Result<()> {
        if red(s) {
            Err(proof_gap(
                "find_good_configuration",
                format!("{} should be blue by maximality ({why})", edge(&s)),
                instance(c, p, w, i, u),
            ))
        } else {
            Ok(())
        }
    };
    let mut out = Vec::new();
    let at_start: Vec<Vertex> = w.iter().copied().filter(|&x| red([u, v0, x])).collect();
    let at_end: Vec<Vertex> = w.iter().copied().filter(|&x| red([v2, v3, x])).collect();
    if !at_start.is_empty() || !at_end.is_empty() {
        for (&x, start) in at_start.iter().map(|x| (x, true)).chain(at_end.iter().map(|x| (x, false))) {
            for &x1 in w.iter().filter(|&&y| y != x) {
                for &x2 in w.iter().filter(|&&y| y != x && y != x1) {
                    let cfg = if start {
                        predicted([x1, v1, v0], "red edge at the start")?;
                        predicted([v0, v2, x2], "red edge at the start")?;
                        GoodConfiguration { x: x1, a1: v1, a2: v0, a3: v2, y: x2, anchor: i, avoided: v3 }
                    } else {
                        predicted([x1, v1, v2], "red edge at the end")?;
                        predicted([v2, v0, x2], "red edge at the end")?;
                        GoodConfiguration { x: x1, a1: v1, a2: v2, a3: v0, y: x2, anchor: i, avoided: v3 }
                    };
                    out.push(cfg);
                }
            }
        }
        let case = if at_start.is_empty() {
            ConfigurationCase::RedAtEnd
        } else {
            ConfigurationCase::RedAtStart
        };
        return Ok((case, out));
    }
    for &y in w {
        // (cross edge, vertex it shares with {u, v_2i, x}, its other window vertex)
        let crosses = [([u, v1, y], u, v1), ([v0, v1, y], v0, v1), ([u, v2, y], u, v2), ([v0, v2, y], v0, v2)];
        for (f, shared, other) in crosses {
            if red(f) {
                continue;
            }
            let first = if shared == u { v0 } else { u };
            for &x in w.iter().filter(|&&x| x != y) {
                out.push(GoodConfiguration { x, a1: first, a2: shared, a3: other, y, anchor: i, avoided: v3 });
            }
        }
    }
    if !out.is_empty() {
        return Ok((ConfigurationCase::BlueCross, out));
    }
    for &b in w {
        predicted([v0, v3, b], "all cross edges red")?;
    }
    for &a in w {
        for &b in w.iter().filter(|&&b| b != a) {
            out.push(GoodConfiguration { x: a, a1: u, a2: v0, a3: v3, y: b, anchor: i, avoided: v2 });
        }
    }
    Ok((ConfigurationCase::AllCrossRed, out))
}

fn excluded_vertex(
    w: &[Vertex],
    cands: &[GoodConfiguration],
    fail: impl Fn(String) -> Error,
) -> Result<Option<Vertex>> {
    let missing: Vec<Vertex> = w
        .iter()
        .copied()
        .filter(|&z| !cands.iter().any(|g| g.x == z || g.y == z))
        .collect();
    match missing.as_slice() {
        [] => Ok(None),
        [z] => Ok(Some(*z)),
        more => Err(fail(format!("W vertices {more:?} can serve as no end vertex"))),
    }
}

/// Finds a good blue configuration at edges `i`, `i + 1` of a red path that
/// is maximal with respect to `w`, entering the window through `u`.
pub fn find_good_configuration(
    c: &TwoColoring,
    p: &Embedding,
    w: &[Vertex],
    i: usize,
    u: Vertex,
) -> Result<ConfigurationReport> {
    check_shape(c, p, w, i, u)?;
    let q = MaximalityQuery {
        path: p.clone(),
        w: w.to_vec(),
    };
    if !is_maximal_wrt(c, &q).map_err(|e| Error::HypothesisViolation(e.to_string()))? {
        return Err(Error::HypothesisViolation("the path is not maximal with respect to W".into()));
    }
    let (case, cands) = candidates(c, p, w, i, u)?;
    let gap = |d: String| proof_gap("find_good_configuration", d, instance(c, p, w, i, u));
    let excluded = excluded_vertex(w, &cands, gap)?;
    let Some(first) = cands.into_iter().next() else {
        return Err(gap("no configuration available".into()));
    };
    validate_configuration(c, p, w, u, &first).map_err(gap)?;
    Ok(ConfigurationReport {
        configuration: first,
        case,
        excluded,
    })
}

/// Independent check of every defining property of a good configuration.
pub fn validate_configuration(
    c: &TwoColoring,
    p: &Embedding,
    w: &[Vertex],
    u: Vertex,
    g: &GoodConfiguration,
) -> std::result::Result<(), String> {
    let i = g.anchor;
    let n = p.template.n;
    if i == 0 || i >= n {
        return Err(format!("anchor {i} outside 1..{n}"));
    }
    let all = [g.x, g.a1, g.a2, g.a3, g.y];
    for (a, &s) in all.iter().enumerate() {
        if all[a + 1..].contains(&s) {
            return Err(format!("vertex {s} repeated"));
        }
    }
    for e in g.edges() {
        if e.vertices().iter().any(|&v| v > c.n_vertices()) {
            return Err(format!("edge {e} outside the host"));
        }
        if c.color_sorted(e.vertices()) != Color::Blue {
            return Err(format!("edge-color-mismatch: {e} is not blue"));
        }
    }
    if !w.contains(&g.x) || !w.contains(&g.y) {
        return Err("end vertices must lie in W".into());
    }
    let win = Window::new(p);
    let ei = win.edge_set(i);
    let ej = win.edge_set(i + 1);
    let s = g.interior();
    let left: Vec<Vertex> = ei[1..].iter().copied().chain([u]).collect();
    let fits = win.a_set(i + 2).iter().any(|&v| {
        s.iter()
            .all(|x| left.contains(x) || (ej.contains(x) && *x != v))
    });
    if !fits {
        return Err(format!("interior {s:?} leaves the window of edges {i} and {}", i + 1));
    }
    if i >= 2 {
        let prev = &win.edge_set(i - 1)[1..];
        if s.iter().filter(|x| prev.contains(x)).count() > 1 {
            return Err("interior meets the previous edge in more than one vertex".into());
        }
    }
    if !ej.contains(&g.avoided) || ei.contains(&g.avoided) || s.contains(&g.avoided) {
        return Err(format!("vertex {} does not witness goodness", g.avoided));
    }
    Ok(())
}
