//! Red/blue edge pairs meeting in `k - 1` vertices.

use serde::{Deserialize, Serialize};

use super::{check_absent, proof_gap, Certification};
use crate::coloring::{Color, TwoColoring};
use crate::combinat::{for_each_subset, rank_sorted};
use crate::error::{invalid, Error, Result};
use crate::template::{cycle_template, Edge, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BichromaticPair {
    pub red: Edge,
    pub blue: Edge,
}

impl BichromaticPair {
    pub fn union_mask(&self) -> u64 {
        self.red.mask() | self.blue.mask()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSearch {
    pub pair: BichromaticPair,
    /// Improvement rounds used; each raises the intersection size.
    pub iterations: usize,
    /// Intersection sizes visited, starting pair first.
    pub intersections: Vec<usize>,
}

/// Checks colors, sizes and the `k - 1` overlap.
pub fn validate_pair(c: &TwoColoring, p: &BichromaticPair) -> std::result::Result<(), String> {
    let k = c.k();
    for (e, want) in [(&p.red, Color::Red), (&p.blue, Color::Blue)] {
        e.check_in_host(k, c.n_vertices()).map_err(|x| x.to_string())?;
        if c.color_sorted(e.vertices()) != want {
            return Err(format!("edge {e} is not {want}"));
        }
    }
    let s = p.red.intersection_size(&p.blue);
    if s != k - 1 {
        return Err(format!("the edges share {s} vertices, expected {}", k - 1));
    }
    Ok(())
}

fn improve(c: &TwoColoring, mut e: Edge, mut f: Edge) -> PairSearch {
    let k = c.k();
    let mut intersections = vec![e.intersection_size(&f)];
    let mut iterations = 0;
    loop {
        let m = e.intersection_size(&f);
        if m + 1 >= k {
            break;
        }
        let mut g = e.intersection(&f);
        g.extend(e.difference(&f).into_iter().take((k - m) / 2));
        g.extend(f.difference(&e).into_iter().take((k - m).div_ceil(2)));
        let g = Edge::new(g).expect("distinct vertices");
        if c.color_sorted(g.vertices()) == Color::Red {
            e = g;
        } else {
            f = g;
        }
        iterations += 1;
        intersections.push(e.intersection_size(&f));
    }
    PairSearch {
        pair: BichromaticPair { red: e, blue: f },
        iterations,
        intersections,
    }
}

/// A red and a blue edge sharing `k - 1` vertices, starting from the first
/// red and first blue edge in colex order.
pub fn adjacent_bichromatic_pair(c: &TwoColoring) -> Result<PairSearch> {
    let k = c.k();
    if (c.n_vertices() as usize) < k + 1 {
        return Err(Error::HostTooSmall {
            needed: k as u32 + 1,
            have: c.n_vertices(),
        });
    }
    let red = c.edges_of(Color::Red).next();
    let blue = c.edges_of(Color::Blue).next();
    match (red, blue) {
        (Some(e), Some(f)) => Ok(improve(c, e, f)),
        _ => Err(Error::MonochromaticColoring),
    }
}

/// As [`adjacent_bichromatic_pair`], using only edges inside `vertices`.
pub fn adjacent_bichromatic_pair_within(c: &TwoColoring, vertices: &[Vertex]) -> Result<PairSearch> {
    let k = c.k();
    let mut vs = vertices.to_vec();
    vs.sort_unstable();
    vs.dedup();
    if vs.len() < k + 1 {
        return Err(Error::HostTooSmall {
            needed: k as u32 + 1,
            have: vs.len() as u32,
        });
    }
    if vs.iter().any(|&v| v == 0 || v > c.n_vertices()) {
        return Err(invalid("vertex outside the host"));
    }
    let mut first: [Option<(usize, Vec<Vertex>)>; 2] = [None, None];
    for_each_subset(&vs, k, |s| {
        let slot = match c.color_sorted(s) {
            Color::Red => 0,
            Color::Blue => 1,
        };
        let r = rank_sorted(s);
        if first[slot].as_ref().map_or(true, |(best, _)| r < *best) {
            first[slot] = Some((r, s.to_vec()));
        }
    });
    match first {
        [Some((_, e)), Some((_, f))] => Ok(improve(c, Edge::new(e)?, Edge::new(f)?)),
        _ => Err(Error::MonochromaticColoring),
    }
}

fn refine(c: &TwoColoring, red: Edge, blue: Edge) -> Result<BichromaticPair> {
    if red.intersection_size(&blue) + 1 == c.k() {
        return Ok(BichromaticPair { red, blue });
    }
    let mut union = red.vertices().to_vec();
    union.extend_from_slice(blue.vertices());
    Ok(adjacent_bichromatic_pair_within(c, &union)?.pair)
}

fn is_mono(c: &TwoColoring, vs: &[Vertex]) -> Option<Color> {
    let mut seen = [false; 2];
    for_each_subset(vs, c.k(), |s| match c.color_sorted(s) {
        Color::Red => seen[0] = true,
        Color::Blue => seen[1] = true,
    });
    match seen {
        [true, false] => Some(Color::Red),
        [false, true] => Some(Color::Blue),
        _ => None,
    }
}

/// Tries the case analysis that starts from one adjacent pair and an
/// all-red remainder.
fn from_red_remainder(
    c: &TwoColoring,
    v: &[Vertex],
    w: &[Vertex],
) -> Result<Option<(BichromaticPair, BichromaticPair)>> {
    let k = c.k();
    if w.len() < 2 * k - 1 {
        return Ok(None);
    }
    let (w1, w2, extra) = (&w[..k - 1], &w[k - 1..2 * k - 2], w[2 * k - 2]);
    let col = |vs: &[Vertex]| {
        let mut s = vs.to_vec();
        s.sort_unstable();
        c.color_sorted(&s)
    };
    let with = |x: Vertex, rest: &[Vertex]| -> Result<Edge> {
        let mut s = rest.to_vec();
        s.push(x);
        Edge::new(s)
    };
    let e1 = Edge::from_slice(&v[..k])?;
    let e2 = Edge::from_slice(&v[1..])?;
    let g1 = with(v[0], w1)?;
    let candidates = if col(g1.vertices()) == Color::Blue {
        let g2 = with(v[k], w2)?;
        if col(g2.vertices()) == Color::Red {
            [(g2, e2), (with(extra, w1)?, g1)]
        } else {
            [(e1, g1), (with(extra, w2)?, g2)]
        }
    } else {
        let f1 = with(v[k - 1], w2)?;
        [(g1, with(v[k - 2], w1)?), (with(extra, w2)?, f1)]
    };
    let ok = candidates
        .iter()
        .all(|(r, b)| col(r.vertices()) == Color::Red && col(b.vertices()) == Color::Blue);
    if !ok {
        return Ok(None);
    }
    let [(r1, b1), (r2, b2)] = candidates;
    Ok(Some((refine(c, r1, b1)?, refine(c, r2, b2)?)))
}

fn exhaustive(c: &TwoColoring) -> Option<(BichromaticPair, BichromaticPair)> {
    let k = c.k();
    let all: Vec<Vertex> = (1..=c.n_vertices()).collect();
    let mut sets: Vec<u64> = Vec::new();
    for_each_subset(&all, k + 1, |s| {
        if is_mono(c, s).is_none() {
            sets.push(s.iter().fold(0u64, |m, &x| m | 1 << (x - 1)));
        }
    });
    for (a, &s) in sets.iter().enumerate() {
        if let Some(&t) = sets[a + 1..].iter().find(|&&t| s & t == 0) {
            let verts = |mask: u64| -> Vec<Vertex> { all.iter().copied().filter(|x| mask & 1 << (x - 1) != 0).collect() };
            let p = adjacent_bichromatic_pair_within(c, &verts(s)).ok()?.pair;
            let q = adjacent_bichromatic_pair_within(c, &verts(t)).ok()?.pair;
            return Some((p, q));
        }
    }
    None
}

/// Two vertex-disjoint adjacent red/blue pairs, following the case analysis
/// and falling back to exhaustive search over `(k+1)`-sets.
pub fn find_disjoint_pairs(c: &TwoColoring) -> Result<(BichromaticPair, BichromaticPair)> {
    let k = c.k();
    let first = adjacent_bichromatic_pair(c)?.pair;
    // v_1 = e_1 \ e_2, v_2..v_k = e_1 ∩ e_2, v_{k+1} = e_2 \ e_1
    let mut v = first.red.difference(&first.blue);
    v.extend(first.red.intersection(&first.blue));
    v.extend(first.blue.difference(&first.red));
    let used = first.union_mask();
    let w: Vec<Vertex> = (1..=c.n_vertices()).filter(|x| used & 1 << (x - 1) == 0).collect();
    let mut found = None;
    if w.len() > k {
        match is_mono(c, &w) {
            None => {
                let second = adjacent_bichromatic_pair_within(c, &w)?.pair;
                found = Some((first, second));
            }
            Some(Color::Red) => found = from_red_remainder(c, &v, &w)?,
            Some(Color::Blue) => {}
        }
    }
    let pairs = match found.or_else(|| exhaustive(c)) {
        Some(p) => p,
        None => {
            return Err(proof_gap(
                "find_disjoint_pairs",
                "no two disjoint adjacent red/blue pairs exist",
                serde_json::json!({ "coloring": c.to_json(false) }),
            ))
        }
    };
    for p in [&pairs.0, &pairs.1] {
        validate_pair(c, p).map_err(Error::InternalAssertion)?;
    }
    if pairs.0.union_mask() & pairs.1.union_mask() != 0 {
        return Err(Error::InternalAssertion("pairs are not disjoint".into()));
    }
    Ok(pairs)
}

/// Disjoint adjacent pairs on `t(k-1) + 1` vertices when there is no red
/// `C_t` and no blue `C_3`. Both exclusions are re-checked within `budget`.
pub fn disjoint_bichromatic_pairs(
    c: &TwoColoring,
    t: usize,
    budget: Option<u64>,
) -> Result<((BichromaticPair, BichromaticPair), Certification)> {
    let k = c.k();
    if t < 5 {
        return Err(invalid(format!("t = {t} must be at least 5")));
    }
    let host = t * (k - 1) + 1;
    if c.n_vertices() as usize != host {
        return Err(Error::HypothesisViolation(format!(
            "host has {} vertices, expected {host}",
            c.n_vertices()
        )));
    }
    let a = check_absent(c, Color::Blue, &cycle_template(k, 3)?, budget, "no blue C_3")?;
    let b = check_absent(c, Color::Red, &cycle_template(k, t)?, budget, "no red C_t")?;
    let cert = if a == Certification::LemmaCertified && b == Certification::LemmaCertified {
        Certification::LemmaCertified
    } else {
        Certification::InstanceCertified
    };
    Ok((find_disjoint_pairs(c)?, cert))
}
