//! Chaining good configurations along a maximal red 3-uniform path into one
//! long blue path whose every other vertex on the boundary comes from `W`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::configuration::{candidates, check_shape, GoodConfiguration};
use super::proof_gap;
use crate::coloring::TwoColoring;
use crate::embed::{is_maximal_wrt, verify_embedding, ColorClaim, Embedding, MaximalityQuery};
use crate::error::{Error, Result};
use crate::template::{path_template, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsorptionResult {
    /// The blue path, oriented so that its `W` vertices sit at the start
    /// and after every second edge.
    pub path: Embedding,
    pub w_used: Vec<Vertex>,
    /// Trailing red-path edges the blue path does not reach.
    pub r: usize,
    /// A vertex of `e_{n-r} \ e_{n-r-1}` missing from the blue path.
    pub avoided: Vertex,
    /// The configurations in the order they were attached.
    pub configurations: Vec<GoodConfiguration>,
}

impl AbsorptionResult {
    pub fn len(&self) -> usize {
        self.path.template.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Absorbs `W` vertices into a blue path running along the red path `p`,
/// two red edges per step.
pub fn absorb_blue_path(c: &TwoColoring, p: &Embedding, w: &[Vertex]) -> Result<AbsorptionResult> {
    let n = p.template.n;
    if n < 2 {
        return Err(Error::HypothesisViolation(format!("the red path needs at least 2 edges, has {n}")));
    }
    check_shape(c, p, w, 1, p.assignment[0])?;
    let q = MaximalityQuery {
        path: p.clone(),
        w: w.to_vec(),
    };
    if !is_maximal_wrt(c, &q).map_err(|e| Error::HypothesisViolation(e.to_string()))? {
        return Err(Error::HypothesisViolation("the path is not maximal with respect to W".into()));
    }
    let dump = || {
        serde_json::json!({
            "coloring": c.to_json(false),
            "path": p.assignment,
            "w": w,
        })
    };
    // Vertex sequence of the blue path: x, a1, a2, a3, y, ...
    let mut seq: VecDeque<Vertex> = VecDeque::new();
    let mut configs = Vec::new();
    let mut u = p.assignment[0];
    let mut w_cur: Vec<Vertex> = w.to_vec();
    let mut step = 1;
    loop {
        let anchor = 2 * step - 1;
        let (_, cands) = candidates(c, p, &w_cur, anchor, u)?;
        let chosen = if seq.is_empty() {
            cands.into_iter().next()
        } else {
            let (front, back) = (seq[0], seq[seq.len() - 1]);
            let fresh = |z: Vertex| z != front && z != back;
            cands
                .into_iter()
                .find(|g| (g.x == back || g.x == front) && fresh(g.y) || (g.y == back || g.y == front) && fresh(g.x))
        };
        let Some(g) = chosen else {
            return Err(proof_gap(
                "absorb_blue_path",
                format!("no configuration at edges {anchor}, {} extends the blue path", anchor + 1),
                dump(),
            ));
        };
        let forward = [g.x, g.a1, g.a2, g.a3, g.y];
        if seq.is_empty() {
            seq.extend(forward);
        } else if g.x == seq[seq.len() - 1] {
            seq.extend(&forward[1..]);
        } else if g.y == seq[seq.len() - 1] {
            seq.extend(forward[..4].iter().rev());
        } else if g.y == seq[0] {
            for &v in forward[..4].iter().rev() {
                seq.push_front(v);
            }
        } else {
            for &v in &forward[1..] {
                seq.push_front(v);
            }
        }
        u = g.avoided;
        configs.push(g);
        let (front, back) = (seq[0], seq[seq.len() - 1]);
        w_cur = w
            .iter()
            .copied()
            .filter(|z| *z == front || *z == back || !seq.contains(z))
            .collect();
        if w_cur.len() <= 3 || n - 2 * step <= 1 {
            break;
        }
        step += 1;
    }
    let assignment: Vec<Vertex> = seq.into_iter().collect();
    let path = Embedding {
        template: path_template(3, 2 * step)?,
        assignment,
        claimed_color: ColorClaim::Blue,
    };
    let mut w_used: Vec<Vertex> = w.iter().copied().filter(|z| path.assignment.contains(z)).collect();
    w_used.sort_unstable();
    let res = AbsorptionResult {
        path,
        w_used,
        r: n - 2 * step,
        avoided: u,
        configurations: configs,
    };
    validate_absorption(c, p, w, &res).map_err(|d| proof_gap("absorb_blue_path", d, dump()))?;
    Ok(res)
}

/// Independent check of the properties of an absorption result.
pub fn validate_absorption(
    c: &TwoColoring,
    p: &Embedding,
    w: &[Vertex],
    res: &AbsorptionResult,
) -> std::result::Result<(), String> {
    let q_path = &res.path;
    if q_path.claimed_color != ColorClaim::Blue {
        return Err("the absorbing path must be claimed blue".into());
    }
    verify_embedding(c, q_path).map_err(|e| e.to_string())?;
    let n = p.template.n;
    let q = q_path.template.n;
    if res.r > n || q != n - res.r || q != 2 * (res.w_used.len().max(1) - 1) {
        return Err(format!(
            "length mismatch: q = {q}, n - r = {}, |W'| = {}",
            n as isize - res.r as isize,
            res.w_used.len()
        ));
    }
    let mut expected: Vec<Vertex> = (0..=q / 2).map(|i| q_path.assignment[4 * i]).collect();
    expected.sort_unstable();
    if expected != res.w_used {
        return Err(format!("W' = {:?} but the boundary vertices are {expected:?}", res.w_used));
    }
    if res.w_used.iter().any(|z| !w.contains(z)) {
        return Err("W' is not a subset of W".into());
    }
    let covered: Vec<Vertex> = (1..=q).flat_map(|i| p.edge_sequence(i)).collect();
    if let Some(v) = q_path
        .assignment
        .iter()
        .find(|v| !res.w_used.contains(v) && !covered.contains(v))
    {
        return Err(format!("vertex {v} lies outside the first {q} red edges"));
    }
    let last = p.edge(q);
    let missing = last
        .vertices()
        .iter()
        .filter(|&&v| q == 1 || !p.edge(q - 1).contains(v))
        .any(|v| !q_path.assignment.contains(v));
    if !missing {
        return Err(format!("the blue path covers all of e_{q} minus e_{}", q - 1));
    }
    if !q_path.assignment.iter().all(|v| p.assignment.contains(v) || w.contains(v)) {
        return Err("the blue path leaves V(P) and W".into());
    }
    let x = w.len() - res.w_used.len();
    if !(x <= 1 || res.r <= 1) {
        return Err(format!("{x} W vertices unused while {} red edges remain", res.r));
    }
    Ok(())
}
