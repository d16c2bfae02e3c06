//! Blue 3-uniform cycles forced by a red cycle one edge short of the
//! forbidden red length.
//!
//! The red cycle `C` has edges `{v_{2i-1}, v_{2i}, v_{2i+1}}` (indices mod
//! `2(n-1)`), and `W` is the set of host vertices off `C`.

use serde::{Deserialize, Serialize};

use super::{check_absent, color_of, edge, proof_gap, require_color, show_edges, Certification};
use crate::coloring::{Color, TwoColoring};
use crate::embed::{find_embedding, verify_edge_sequence, ColorClaim, Embedding, SearchOptions, SearchResult};
use crate::error::{invalid, Error, Result};
use crate::template::{cycle_template, Edge, Kind, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShorterCycleCase {
    /// Every edge joining a consecutive pair of `C` to `W` is blue.
    AllCrossBlue,
    /// A red cross edge exists and the blue triangle is built directly.
    RedCrossDirect,
    /// A red cross edge exists; the blue cycle comes from a complete search.
    RedCrossSearch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShorterCycleOutcome {
    pub cycle: Embedding,
    pub case: ShorterCycleCase,
    pub certification: Certification,
}

/// 1-based access to the cycle vertices with wrap-around.
struct Ring<'a> {
    a: &'a [Vertex],
}

impl Ring<'_> {
    fn v(&self, j: isize) -> Vertex {
        let l = self.a.len() as isize;
        self.a[(j - 1).rem_euclid(l) as usize]
    }
}

fn needed_x(m: usize) -> usize {
    (m - 1) / 2 + 1
}

fn largest_index(m: usize) -> usize {
    if m % 2 == 0 {
        3 * m / 2 + 1
    } else {
        3 * (m - 1) / 2 + 1
    }
}

fn case2_edges(ring: &Ring<'_>, xs: &[Vertex], m: usize) -> Vec<Edge> {
    let x = |j: usize| xs[j - 1];
    let v = |j: usize| ring.v(j as isize);
    let mut edges: Vec<Edge> = (1..m)
        .map(|i| {
            if i % 2 == 1 {
                edge(&[x((i + 1) / 2), v((3 * i + 1) / 2), v((3 * i + 3) / 2)])
            } else {
                edge(&[v(3 * i / 2), v(3 * i / 2 + 1), x(i / 2 + 1)])
            }
        })
        .collect();
    edges.push(if m % 2 == 0 {
        edge(&[x(1), v(3 * m / 2), v(3 * m / 2 + 1)])
    } else {
        edge(&[x((m + 1) / 2), v(1), v(2)])
    });
    edges
}

/// The explicit blue `m`-cycle available when every edge formed by two
/// consecutive vertices of an edge of `C` (sharing its middle vertex) and a
/// vertex of `xs` is blue.
pub fn case2_blue_cycle(c: &TwoColoring, cycle: &Embedding, xs: &[Vertex], m: usize) -> Result<Embedding> {
    if c.k() != 3 || cycle.template.k != 3 || cycle.template.kind != Kind::Cycle {
        return Err(invalid("expected a 3-uniform loose cycle"));
    }
    if m < 3 {
        return Err(invalid(format!("target length m = {m} must be at least 3")));
    }
    let len = cycle.assignment.len();
    if largest_index(m) > len {
        return Err(invalid(format!(
            "a blue cycle of length {m} needs {} cycle vertices, the red cycle has {len}",
            largest_index(m)
        )));
    }
    if xs.len() < needed_x(m) {
        return Err(invalid(format!("need {} outside vertices, got {}", needed_x(m), xs.len())));
    }
    let ring = Ring { a: &cycle.assignment };
    for i in 1..=cycle.template.n as isize {
        for &z in xs {
            for pair in [[ring.v(2 * i - 1), ring.v(2 * i)], [ring.v(2 * i), ring.v(2 * i + 1)]] {
                let f = [pair[0], pair[1], z];
                if color_of(c, &f) == Color::Red {
                    return Err(Error::HypothesisViolation(format!("cross edge {} is red", edge(&f))));
                }
            }
        }
    }
    let edges = case2_edges(&ring, xs, m);
    verify_edge_sequence(c, Kind::Cycle, &edges, Some(Color::Blue))
        .map_err(|why| Error::InternalAssertion(format!("cycle {}: {why}", show_edges(&edges))))?;
    Embedding::from_edge_sequence(Kind::Cycle, &edges, ColorClaim::Blue)
}

/// A blue `C_m` in a host of `2n + floor((m-1)/2)` vertices with no red
/// `C_n`, given a red `C_{n-1}`.
pub fn blue_cycle_from_red_shorter_cycle(
    c: &TwoColoring,
    cycle: &Embedding,
    n: usize,
    m: usize,
    budget: Option<u64>,
) -> Result<ShorterCycleOutcome> {
    if c.k() != 3 {
        return Err(invalid("blue cycles from shorter red cycles are 3-uniform"));
    }
    if m < 3 || n < m {
        return Err(Error::HypothesisViolation(format!("need n >= m >= 3, got n = {n}, m = {m}")));
    }
    if matches!((n, m), (3, 3) | (4, 3) | (4, 4)) {
        return Err(Error::HypothesisViolation(format!("(n, m) = ({n}, {m}) is excluded")));
    }
    let host = 2 * n + (m - 1) / 2;
    if c.n_vertices() as usize != host {
        return Err(Error::HypothesisViolation(format!(
            "host has {} vertices, expected {host}",
            c.n_vertices()
        )));
    }
    if cycle.template.kind != Kind::Cycle || cycle.template.k != 3 || cycle.template.n != n - 1 {
        return Err(Error::HypothesisViolation(format!("expected a 3-uniform cycle with {} edges", n - 1)));
    }
    require_color(c, cycle, Color::Red, "the shorter cycle")?;
    let certification = check_absent(c, Color::Red, &cycle_template(3, n)?, budget, "no red C_n")?;
    let on_cycle = cycle.vertex_mask();
    let w: Vec<Vertex> = (1..=c.n_vertices()).filter(|v| on_cycle & 1 << (v - 1) == 0).collect();
    let dump = || {
        serde_json::json!({
            "coloring": c.to_json(false),
            "cycle": cycle.assignment,
            "n": n,
            "m": m,
        })
    };

    let red_cross = |ring: &Ring<'_>| -> Option<(isize, Vertex)> {
        (1..n as isize).find_map(|i| {
            w.iter()
                .find(|&&z| color_of(c, &[z, ring.v(2 * i), ring.v(2 * i + 1)]) == Color::Red)
                .map(|&z| (i, z))
        })
    };
    let red_cross_left = |ring: &Ring<'_>| -> bool {
        (1..n as isize).any(|i| {
            w.iter()
                .any(|&z| color_of(c, &[ring.v(2 * i - 1), ring.v(2 * i), z]) == Color::Red)
        })
    };

    let forward = Ring { a: &cycle.assignment };
    if red_cross(&forward).is_none() && !red_cross_left(&forward) {
        let blue = case2_blue_cycle(c, cycle, &w, m)?;
        return Ok(ShorterCycleOutcome {
            cycle: blue,
            case: ShorterCycleCase::AllCrossBlue,
            certification,
        });
    }

    if m == 3 {
        // Reversing the cycle turns a red {v_{2i-1}, v_{2i}, z} into a red
        // {z, v'_{2j}, v'_{2j+1}}.
        let reversed: Vec<Vertex> = (1..=cycle.assignment.len() as isize).map(|j| forward.v(2 - j)).collect();
        let back = Ring { a: &reversed };
        let (ring, (i, z)) = match red_cross(&forward) {
            Some(hit) => (forward, hit),
            None => {
                let hit = red_cross(&back).ok_or_else(|| proof_gap("shorter-cycle", "reversal lost the red cross edge", dump()))?;
                (back, hit)
            }
        };
        let others: Vec<Vertex> = w.iter().copied().filter(|&x| x != z).collect();
        let (u, v) = (others[0], others[1]);
        let g = [z, ring.v(2 * i), ring.v(2 * i + 1)];
        let fs = [
            [u, ring.v(2 * i - 2), ring.v(2 * i)],
            [ring.v(2 * i), v, ring.v(2 * i - 1)],
            [ring.v(2 * i - 1), z, u],
        ];
        for f in &fs {
            if color_of(c, f) == Color::Red {
                // f g e_{i+1} ... e_{i-1} closes a red C_n.
                let mut red: Vec<Edge> = vec![edge(f), edge(&g)];
                for j in 1..n as isize - 1 {
                    let e = i + j;
                    red.push(edge(&[ring.v(2 * e - 1), ring.v(2 * e), ring.v(2 * e + 1)]));
                }
                return match verify_edge_sequence(c, Kind::Cycle, &red, Some(Color::Red)) {
                    Ok(()) => Err(Error::HypothesisViolation(format!(
                        "found a red C_{n}: {}",
                        show_edges(&red)
                    ))),
                    Err(why) => Err(proof_gap("shorter-cycle", format!("red edge {} but {why}", edge(f)), dump())),
                };
            }
        }
        let edges: Vec<Edge> = fs.iter().map(|f| edge(f)).collect();
        verify_edge_sequence(c, Kind::Cycle, &edges, Some(Color::Blue))
            .map_err(|why| proof_gap("shorter-cycle", format!("triangle {}: {why}", show_edges(&edges)), dump()))?;
        return Ok(ShorterCycleOutcome {
            cycle: Embedding::from_edge_sequence(Kind::Cycle, &edges, ColorClaim::Blue)?,
            case: ShorterCycleCase::RedCrossDirect,
            certification,
        });
    }

    match find_embedding(c, Color::Blue, &cycle_template(3, m)?, SearchOptions::default())? {
        SearchResult::Found(e) => Ok(ShorterCycleOutcome {
            cycle: e,
            case: ShorterCycleCase::RedCrossSearch,
            certification,
        }),
        _ => Err(proof_gap("shorter-cycle", format!("no blue C_{m} exists"), dump())),
    }
}
