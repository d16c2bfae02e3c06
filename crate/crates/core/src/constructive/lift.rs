//! Red 5- and 6-cycles forced by a blue 4-cycle when blue triangles are
//! excluded.
//!
//! The blue cycle has edges `e_i = {v_1..v_k} + (i-1)(k-1)` on vertices
//! `v_1 ... v_{4(k-1)}`; `W` holds the remaining host vertices in ascending
//! order.

use crate::coloring::{Color, TwoColoring};
use crate::embed::{verify_edge_sequence, ColorClaim, Embedding};
use crate::error::{invalid, Error, Result};
use crate::template::{Edge, Kind, Vertex};

use super::{require_color, show_edges};

/// Builds the red `C_i` (`i` in {5, 6}) on `i(k-1) + 1` vertices from a blue
/// `C_4`. Returns the first blue edge met if one of the listed edges is blue.
pub fn lift_blue_c4(c: &TwoColoring, c4: &Embedding, i: usize) -> Result<Embedding> {
    if i != 5 && i != 6 {
        return Err(invalid(format!("target length {i} must be 5 or 6")));
    }
    let k = c.k();
    if k < 3 {
        return Err(invalid("uniformity must be at least 3"));
    }
    let host = i * (k - 1) + 1;
    if c.n_vertices() as usize != host {
        return Err(Error::HypothesisViolation(format!(
            "host has {} vertices, expected {host}",
            c.n_vertices()
        )));
    }
    if c4.template.kind != Kind::Cycle || c4.template.n != 4 || c4.template.k != k {
        return Err(Error::HypothesisViolation(format!("expected a {k}-uniform cycle with 4 edges")));
    }
    require_color(c, c4, Color::Blue, "the 4-cycle")?;
    let v = |j: usize| c4.assignment[(j - 1) % c4.assignment.len()];
    let e = |t: usize| -> Vec<Vertex> { (1..=k).map(|s| v((t - 1) * (k - 1) + s)).collect() };
    let used = c4.vertex_mask();
    let w: Vec<Vertex> = (1..=c.n_vertices()).filter(|x| used & 1 << (x - 1) == 0).collect();
    let mk = |base: Vec<Vertex>, out: &[Vertex], inn: &[Vertex]| -> Result<Edge> {
        let mut s: Vec<Vertex> = base.into_iter().filter(|x| !out.contains(x)).collect();
        s.extend_from_slice(inn);
        Edge::new(s)
    };
    let edges = if i == 5 {
        let rest: Vec<Vertex> = w[2..].iter().copied().chain([v(3 * k - 3), v(1)]).collect();
        vec![
            mk(e(2), &[v(k)], &[v(4 * k - 4)])?,
            mk(e(4), &[v(1)], &[v(k)])?,
            mk(e(1), &[v(1)], &[v(3 * k - 3)])?,
            Edge::new(rest)?,
            mk(e(3), &[v(3 * k - 3), v(3 * k - 2)], &[v(1), w[0]])?,
        ]
    } else {
        let a = &w[..k - 2];
        let b = &w[k - 2..2 * k - 4];
        let cc = &w[2 * k - 4..];
        vec![
            mk(e(2), &[v(k), v(k + 1)], &[cc[0], v(4 * k - 4)])?,
            mk(e(4), &[v(1)], &[v(k + 1)])?,
            mk(e(3), &[v(2 * k - 1), v(2 * k)], &[v(k), cc[1]])?,
            mk(a.to_vec(), &[], &[v(k), v(2 * k)])?,
            mk(e(1), &[v(k)], &[v(2 * k)])?,
            mk(b.to_vec(), &[], &[v(1), v(2 * k - 1)])?,
        ]
    };
    if let Some(blue) = edges.iter().find(|f| c.color_sorted(f.vertices()) == Color::Blue) {
        return Err(Error::BlueEdgeEncountered(blue.clone()));
    }
    verify_edge_sequence(c, Kind::Cycle, &edges, Some(Color::Red))
        .map_err(|why| Error::InternalAssertion(format!("lifted cycle {}: {why}", show_edges(&edges))))?;
    Embedding::from_edge_sequence(Kind::Cycle, &edges, ColorClaim::Red)
}
