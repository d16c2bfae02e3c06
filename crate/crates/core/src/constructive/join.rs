//! Joining two disjoint red loose cycles into one long red cycle, or
//! extracting a short blue cycle from the edges that block the join.
//!
//! `C1 = e_1 ... e_n` has vertices `v_1 ... v_{n(k-1)}` and `C2 = f_1 ... f_m`
//! has vertices `u_1 ... u_{m(k-1)}`, with `e_i = {v_1..v_k} + (i-1)(k-1)`.
//! Each step swaps a few boundary vertices between `e_i` and `f_i` to form
//! two candidate edges `g`, `h`. If both are red they splice the cycles
//! together; otherwise the blue one extends a blue path, and the last two
//! steps close that path into a blue cycle of the requested length.

use serde::{Deserialize, Serialize};

use super::{proof_gap, require_color, show_edges};
use crate::coloring::{Color, TwoColoring};
use crate::embed::{verify_edge_sequence, ColorClaim, Embedding};
use crate::error::{Error, Result};
use crate::template::{Edge, Kind, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestedEdge {
    pub edge: Edge,
    pub color: Color,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinStep {
    /// `"1"`, `"2"`, ..., `"l-1"`, `"l"` or `"l'"`.
    pub label: String,
    pub g: TestedEdge,
    pub h: TestedEdge,
    /// The blue candidate carried forward, `None` when both were red.
    pub chosen: Option<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "color", rename_all = "kebab-case")]
pub enum JoinOutcome {
    Red { cycle: Embedding },
    Blue { cycle: Embedding },
}

impl JoinOutcome {
    pub fn cycle(&self) -> &Embedding {
        match self {
            JoinOutcome::Red { cycle } | JoinOutcome::Blue { cycle } => cycle,
        }
    }

    pub fn color(&self) -> Color {
        match self {
            JoinOutcome::Red { .. } => Color::Red,
            JoinOutcome::Blue { .. } => Color::Blue,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinTrace {
    pub steps: Vec<JoinStep>,
    pub outcome: JoinOutcome,
}

struct Sides<'a> {
    k: usize,
    v: &'a [Vertex],
    u: &'a [Vertex],
}

impl Sides<'_> {
    fn v(&self, j: usize) -> Vertex {
        self.v[(j - 1) % self.v.len()]
    }

    fn u(&self, j: usize) -> Vertex {
        self.u[(j - 1) % self.u.len()]
    }

    fn e(&self, i: usize) -> Vec<Vertex> {
        (1..=self.k).map(|t| self.v((i - 1) * (self.k - 1) + t)).collect()
    }

    fn f(&self, i: usize) -> Vec<Vertex> {
        (1..=self.k).map(|t| self.u((i - 1) * (self.k - 1) + t)).collect()
    }

    fn e_edge(&self, i: usize) -> Edge {
        Edge::new(self.e(i)).expect("cycle edge")
    }

    fn f_edge(&self, i: usize) -> Edge {
        Edge::new(self.f(i)).expect("cycle edge")
    }

    /// Position of `x` on the first cycle (1-based), or on the second.
    fn v_index(&self, x: Vertex) -> Option<usize> {
        self.v.iter().position(|&y| y == x).map(|p| p + 1)
    }

    fn u_index(&self, x: Vertex) -> Option<usize> {
        self.u.iter().position(|&y| y == x).map(|p| p + 1)
    }
}

fn swap(base: Vec<Vertex>, out: &[Vertex], inn: &[Vertex]) -> Result<Edge> {
    let size = base.len();
    let mut s: Vec<Vertex> = base.into_iter().filter(|x| !out.contains(x)).collect();
    for &x in inn {
        if !s.contains(&x) {
            s.push(x);
        }
    }
    if s.len() != size {
        return Err(Error::InternalAssertion(format!("swapped edge {s:?} has the wrong size")));
    }
    Edge::new(s)
}

/// Vertex of `s` inside `e_i` (or `f_i`) with the largest or smallest index.
fn extreme(s: &Edge, within: &[Vertex], index: impl Fn(Vertex) -> Option<usize>, max: bool) -> Option<Vertex> {
    let it = s.vertices().iter().copied().filter(|x| within.contains(x));
    if max {
        it.max_by_key(|&x| index(x))
    } else {
        it.min_by_key(|&x| index(x))
    }
}

/// Joins red cycles `c1` (length `n`) and `c2` (length `m <= n`) into a red
/// `C_{n+m}` or finds a blue `C_l`, recording every tested edge.
pub fn join_red_cycles(c: &TwoColoring, c1: &Embedding, c2: &Embedding, l: usize) -> Result<JoinTrace> {
    let k = c.k();
    if k < 4 {
        return Err(Error::HypothesisViolation(format!("joining needs k >= 4, got {k}")));
    }
    for (name, cy) in [("first", c1), ("second", c2)] {
        if cy.template.kind != Kind::Cycle || cy.template.k != k {
            return Err(Error::HypothesisViolation(format!("{name} input is not a {k}-uniform cycle")));
        }
        require_color(c, cy, Color::Red, name)?;
    }
    let (n, m) = (c1.template.n, c2.template.n);
    if !(n >= m && m >= 3) {
        return Err(Error::HypothesisViolation(format!("need n >= m >= 3, got n = {n}, m = {m}")));
    }
    if !(3..=m).contains(&l) {
        return Err(Error::HypothesisViolation(format!("target length {l} outside 3..={m}")));
    }
    let need = (k - 1) * (n + m);
    if (c.n_vertices() as usize) < need {
        return Err(Error::HypothesisViolation(format!(
            "host has {} vertices, need {need}",
            c.n_vertices()
        )));
    }
    if c1.vertex_mask() & c2.vertex_mask() != 0 {
        return Err(Error::HypothesisViolation("the two cycles share a vertex".into()));
    }
    let sd = Sides {
        k,
        v: &c1.assignment,
        u: &c2.assignment,
    };
    let dump = || {
        serde_json::json!({
            "coloring": c.to_json(false),
            "c1": c1.assignment,
            "c2": c2.assignment,
            "l": l,
        })
    };
    let vi = |x: Vertex| sd.v_index(x);
    let ui = |x: Vertex| sd.u_index(x);
    let color = |e: &Edge| c.color_sorted(e.vertices());
    let test = |e: Edge| TestedEdge { color: color(&e), edge: e };
    let es = |range: &mut dyn Iterator<Item = usize>| range.map(|i| sd.e_edge(i)).collect::<Vec<_>>();
    let fs = |range: &mut dyn Iterator<Item = usize>| range.map(|i| sd.f_edge(i)).collect::<Vec<_>>();
    let finish = |steps: Vec<JoinStep>, color: Color, edges: Vec<Edge>| -> Result<JoinTrace> {
        if let Err(why) = verify_edge_sequence(c, Kind::Cycle, &edges, Some(color)) {
            return Err(proof_gap(
                "join_red_cycles",
                format!("{color} cycle {} fails: {why}", show_edges(&edges)),
                dump(),
            ));
        }
        let cycle = Embedding::from_edge_sequence(Kind::Cycle, &edges, ColorClaim::from(color))?;
        let outcome = match color {
            Color::Red => JoinOutcome::Red { cycle },
            Color::Blue => JoinOutcome::Blue { cycle },
        };
        Ok(JoinTrace { steps, outcome })
    };
    let q = k - 1;
    let mut steps = Vec::new();
    let mut blue_path: Vec<Edge> = Vec::new();

    // Step 1.
    let g1 = test(swap(sd.e(1), &[sd.v(k - 1), sd.v(k)], &[sd.u(k - 1), sd.u(k)])?);
    let h1 = test(swap(sd.f(1), &[sd.u(k - 1), sd.u(k)], &[sd.v(k - 1), sd.v(k)])?);
    if g1.color == Color::Red && h1.color == Color::Red {
        let mut red = vec![h1.edge.clone()];
        red.extend(es(&mut (2..=n)));
        red.push(g1.edge.clone());
        red.extend(fs(&mut (2..=m)));
        steps.push(JoinStep { label: "1".into(), g: g1, h: h1, chosen: None });
        return finish(steps, Color::Red, red);
    }
    let s1 = if g1.color == Color::Blue { g1.edge.clone() } else { h1.edge.clone() };
    steps.push(JoinStep { label: "1".into(), g: g1, h: h1, chosen: Some(s1.clone()) });
    blue_path.push(s1.clone());

    // Steps 2 ..= l-2.
    let mut prev = s1.clone();
    for i in 2..l.saturating_sub(1) {
        let x = extreme(&prev, &sd.e(i - 1), vi, true).ok_or_else(|| proof_gap("join_red_cycles", "no x", dump()))?;
        let y = extreme(&prev, &sd.f(i - 1), ui, true).ok_or_else(|| proof_gap("join_red_cycles", "no y", dump()))?;
        let (a, b, cc) = ((i - 1) * q + 1, i * q, i * q + 1);
        let g = test(swap(sd.e(i), &[sd.v(a), sd.v(b), sd.v(cc)], &[x, sd.u(b), sd.u(cc)])?);
        let h = test(swap(sd.f(i), &[sd.u(a), sd.u(b), sd.u(cc)], &[y, sd.v(b), sd.v(cc)])?);
        if g.color == Color::Red && h.color == Color::Red {
            let mut red = vec![h.edge.clone()];
            red.extend(es(&mut (i + 1..=n)));
            red.extend(es(&mut (1..i)));
            red.push(g.edge.clone());
            red.extend(fs(&mut (i + 1..=m)));
            red.extend(fs(&mut (1..i)));
            steps.push(JoinStep { label: i.to_string(), g, h, chosen: None });
            return finish(steps, Color::Red, red);
        }
        let s = if g.color == Color::Blue { g.edge.clone() } else { h.edge.clone() };
        steps.push(JoinStep { label: i.to_string(), g, h, chosen: Some(s.clone()) });
        blue_path.push(s.clone());
        prev = s;
    }

    // Step l-1: the closing candidates around e_n and f_{l-1}.
    let x1 = extreme(&s1, &sd.e(1), vi, false).ok_or_else(|| proof_gap("join_red_cycles", "no x_1", dump()))?;
    let y1 = extreme(&s1, &sd.f(1), ui, false).ok_or_else(|| proof_gap("join_red_cycles", "no y_1", dump()))?;
    let xl = extreme(&prev, &sd.e(l - 2), vi, true).ok_or_else(|| proof_gap("join_red_cycles", "no x", dump()))?;
    let yl = extreme(&prev, &sd.f(l - 2), ui, true).ok_or_else(|| proof_gap("join_red_cycles", "no y", dump()))?;
    let last = (n - 1) * q;
    let g = test(swap(
        sd.e(n),
        &[sd.v(last + 1), sd.v(last + 2), sd.v(1)],
        &[x1, sd.u((l - 1) * q), sd.u((l - 1) * q + 1)],
    )?);
    let h = test(swap(
        sd.f(l - 1),
        &[sd.u((l - 2) * q + 1), sd.u((l - 1) * q), sd.u((l - 1) * q + 1)],
        &[yl, sd.v(last + 1), sd.v(last + 2)],
    )?);
    let label = "l-1".to_string();
    if g.color == Color::Red && h.color == Color::Red {
        let mut red = vec![g.edge.clone()];
        red.extend(es(&mut (1..n)));
        red.push(h.edge.clone());
        red.extend(fs(&mut (1..=l - 2).rev()));
        red.extend(fs(&mut (l..=m).rev()));
        steps.push(JoinStep { label, g, h, chosen: None });
        return finish(steps, Color::Red, red);
    }
    let (gl1, hl1) = (g.edge.clone(), h.edge.clone());
    let g_blue = g.color == Color::Blue;
    let chosen = if g_blue { gl1.clone() } else { hl1.clone() };
    steps.push(JoinStep { label, g, h, chosen: Some(chosen) });

    if g_blue {
        let (a, b, cc) = ((l - 2) * q + 1, (l - 1) * q, (l - 1) * q + 1);
        let g = test(swap(sd.e(l - 1), &[sd.v(a), sd.v(b), sd.v(cc)], &[xl, sd.u(b - 1), sd.u(cc)])?);
        let h = test(swap(sd.f(l - 1), &[sd.u(a), sd.u(b - 1), sd.u(cc)], &[yl, sd.v(b), sd.v(cc)])?);
        if g.color == Color::Red && h.color == Color::Red {
            let mut red = vec![h.edge.clone()];
            red.extend(es(&mut (l..=n)));
            red.extend(es(&mut (1..=l - 2)));
            red.push(g.edge.clone());
            red.extend(fs(&mut (l..=m)));
            red.extend(fs(&mut (1..=l - 2)));
            steps.push(JoinStep { label: "l".into(), g, h, chosen: None });
            return finish(steps, Color::Red, red);
        }
        let s = if g.color == Color::Blue { g.edge.clone() } else { h.edge.clone() };
        steps.push(JoinStep { label: "l".into(), g, h, chosen: Some(s.clone()) });
        let mut blue = blue_path;
        blue.push(s);
        blue.push(gl1);
        return finish(steps, Color::Blue, blue);
    }

    let g = test(swap(sd.e(n), &[sd.v(last + 2), sd.v(1)], &[sd.u(m * q), y1])?);
    let h = test(swap(sd.f(m), &[sd.u(m * q), sd.u(1)], &[sd.v(last + 2), x1])?);
    if g.color == Color::Red && h.color == Color::Red {
        let mut red = es(&mut (1..n));
        red.push(g.edge.clone());
        red.extend(fs(&mut (1..m)));
        red.push(h.edge.clone());
        steps.push(JoinStep { label: "l'".into(), g, h, chosen: None });
        return finish(steps, Color::Red, red);
    }
    let s = if g.color == Color::Blue { g.edge.clone() } else { h.edge.clone() };
    steps.push(JoinStep { label: "l'".into(), g, h, chosen: Some(s.clone()) });
    let mut blue = blue_path;
    blue.push(hl1);
    blue.push(s);
    finish(steps, Color::Blue, blue)
}
