//! One-step extensions of a monochromatic loose path by vertices of `W`.
//!
//! A path `e_1 ... e_n` extends when some segment `e_i ... e_{i+r-1}` can be
//! replaced by `r + 1` edges of the same color so that the new path uses
//! exactly `V(P)` plus a set `W'` of new vertices from `W`. Counting
//! vertices forces `|W'| = k - 1`. The untouched edges keep their roles, so
//! the path's own end vertices never move; the replacement attaches to
//! `e_{i-1}` at any vertex other than that edge's first vertex, and to
//! `e_{i+r}` at any vertex other than its last.

use serde::{Deserialize, Serialize};

use super::{find_embedding, verify_embedding, ColorClaim, Embedding, SearchOptions, SearchResult};
use crate::coloring::{Color, TwoColoring};
use crate::combinat::for_each_subset;
use crate::error::{Error, Result};
use crate::template::{path_template, Kind, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalityQuery {
    pub path: Embedding,
    pub w: Vec<Vertex>,
}

/// A replacement witnessing that a path is not maximal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extension {
    /// First replaced edge (1-based).
    pub start: usize,
    /// Number of replaced edges.
    pub replaced: usize,
    pub w_used: Vec<Vertex>,
    /// The `replaced + 1` new edges, as a path from the left attachment to the right one.
    pub segment: Embedding,
}

fn path_color(q: &MaximalityQuery) -> Color {
    match q.path.claimed_color {
        ColorClaim::Blue => Color::Blue,
        _ => Color::Red,
    }
}

fn check_query(c: &TwoColoring, q: &MaximalityQuery) -> Result<()> {
    if q.path.template.kind != Kind::Path {
        return Err(Error::PreconditionViolation("maximality is defined for paths".into()));
    }
    let mut p = q.path.clone();
    p.claimed_color = path_color(q).into();
    if let Err(why) = verify_embedding(c, &p) {
        return Err(Error::PreconditionViolation(format!("path is not monochromatic: {why}")));
    }
    let used = p.vertex_mask();
    let mut seen = 0u64;
    for &w in &q.w {
        if w == 0 || w > c.n_vertices() {
            return Err(Error::PreconditionViolation(format!("W vertex {w} outside the host")));
        }
        let bit = 1u64 << (w - 1);
        if used & bit != 0 {
            return Err(Error::PreconditionViolation(format!("W vertex {w} lies on the path")));
        }
        if seen & bit != 0 {
            return Err(Error::PreconditionViolation(format!("W vertex {w} repeated")));
        }
        seen |= bit;
    }
    Ok(())
}

/// Searches for a one-step extension. `None` means the path is maximal.
pub fn find_extension(c: &TwoColoring, q: &MaximalityQuery) -> Result<Option<Extension>> {
    check_query(c, q)?;
    let k = c.k();
    let p = &q.path;
    let n = p.template.n;
    let color = path_color(q);
    if q.w.len() < k - 1 {
        return Ok(None);
    }
    let mut w_sorted = q.w.clone();
    w_sorted.sort_unstable();
    let edge_masks: Vec<u64> = (1..=n).map(|i| p.edge(i).mask()).collect();
    for r in 1..=n {
        for i in 1..=n - r + 1 {
            let kept = edge_masks
                .iter()
                .enumerate()
                .filter(|(j, _)| *j + 1 < i || *j + 1 >= i + r)
                .fold(0u64, |m, (_, &e)| m | e);
            let old = edge_masks[i - 1..i - 1 + r].iter().fold(0u64, |m, &e| m | e);
            let exclusive = old & !kept;
            let lefts: Vec<Vertex> = if i == 1 {
                vec![p.first_of(1)]
            } else {
                p.edge_sequence(i - 1)[1..].to_vec()
            };
            let rights: Vec<Vertex> = if i + r - 1 == n {
                vec![p.last_of(n)]
            } else {
                p.edge_sequence(i + r)[..k - 1].to_vec()
            };
            let t = path_template(k, r + 1)?;
            let last = t.vertex_count() - 1;
            let mut found = None;
            for_each_subset(&w_sorted, k - 1, |wp| {
                if found.is_some() {
                    return;
                }
                let core = wp.iter().fold(exclusive, |m, &v| m | 1 << (v - 1));
                for &cl in &lefts {
                    for &cr in &rights {
                        let allowed = core | 1 << (cl - 1) | 1 << (cr - 1);
                        let mut fixed = vec![None; t.vertex_count()];
                        fixed[0] = Some(cl);
                        fixed[last] = Some(cr);
                        let opts = SearchOptions {
                            fixed: Some(&fixed),
                            allowed: Some(allowed),
                            max_nodes: None,
                        };
                        if let Ok(SearchResult::Found(seg)) = find_embedding(c, color, &t, opts) {
                            found = Some(Extension {
                                start: i,
                                replaced: r,
                                w_used: wp.to_vec(),
                                segment: seg,
                            });
                            return;
                        }
                    }
                }
            });
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}

/// Whether `q.path` admits no one-step extension through `q.w`.
pub fn is_maximal_wrt(c: &TwoColoring, q: &MaximalityQuery) -> Result<bool> {
    Ok(find_extension(c, q)?.is_none())
}
