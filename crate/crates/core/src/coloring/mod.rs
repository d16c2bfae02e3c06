//! Complete-host red/blue colorings, stored one bit per edge at the edge's
//! colex rank (bit 1 = red).

mod format;
mod witness;

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::combinat::{self, edge_count, rank_sorted, unrank};
use crate::error::{invalid, Result};
use crate::template::{Edge, Vertex};

pub use format::{ColoringFile, ENCODING_HEX};
pub use witness::{lower_bound_witness, witness_host_size, PairKind, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    fn bit(self) -> bool {
        self == Color::Red
    }
}

impl std::fmt::Display for Color {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

/// A total red/blue coloring of the edges of `K^k_N`.
#[derive(Clone, Debug)]
pub struct TwoColoring {
    k: usize,
    n_vertices: u32,
    len: usize,
    words: Vec<u64>,
    twins: OnceLock<Arc<Vec<u8>>>,
}

impl PartialEq for TwoColoring {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.n_vertices == other.n_vertices && self.words == other.words
    }
}

impl Eq for TwoColoring {}

impl TwoColoring {
    /// Monochromatic coloring.
    pub fn uniform(k: usize, n_vertices: u32, color: Color) -> Result<Self> {
        combinat::check_host(n_vertices, k)?;
        let len = edge_count(n_vertices, k);
        let fill = if color.bit() { u64::MAX } else { 0 };
        let mut c = TwoColoring {
            k,
            n_vertices,
            len,
            words: vec![fill; len.div_ceil(64)],
            twins: OnceLock::new(),
        };
        c.clear_tail();
        Ok(c)
    }

    /// Colors each edge by a predicate on its ascending vertex list.
    pub fn from_fn<F: FnMut(&[Vertex]) -> Color>(k: usize, n_vertices: u32, mut f: F) -> Result<Self> {
        let mut c = Self::uniform(k, n_vertices, Color::Blue)?;
        for r in 0..c.len {
            if f(&unrank(r, k)) == Color::Red {
                c.words[r / 64] |= 1 << (r % 64);
            }
        }
        Ok(c)
    }

    /// Colors each edge by its colex rank.
    pub fn from_rank_fn<F: FnMut(usize) -> Color>(k: usize, n_vertices: u32, mut f: F) -> Result<Self> {
        let mut c = Self::uniform(k, n_vertices, Color::Blue)?;
        for r in 0..c.len {
            if f(r) == Color::Red {
                c.words[r / 64] |= 1 << (r % 64);
            }
        }
        Ok(c)
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_vertices(&self) -> u32 {
        self.n_vertices
    }

    /// Number of edges, `C(N, k)`.
    pub fn edge_count(&self) -> usize {
        self.len
    }

    pub fn red_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn color_of_rank(&self, rank: usize) -> Color {
        if self.words[rank / 64] >> (rank % 64) & 1 == 1 {
            Color::Red
        } else {
            Color::Blue
        }
    }

    /// Color of an ascending vertex slice already known to lie in the host.
    #[inline]
    pub fn color_sorted(&self, vertices: &[Vertex]) -> Color {
        self.color_of_rank(rank_sorted(vertices))
    }

    /// Color of an edge, validated against the host.
    pub fn color(&self, edge: &Edge) -> Result<Color> {
        edge.check_in_host(self.k, self.n_vertices)?;
        Ok(self.color_sorted(edge.vertices()))
    }

    pub fn is_red(&self, edge: &Edge) -> Result<bool> {
        Ok(self.color(edge)? == Color::Red)
    }

    pub fn set_rank(&mut self, rank: usize, color: Color) {
        assert!(rank < self.len, "rank {rank} out of range");
        let mask = 1u64 << (rank % 64);
        if color.bit() {
            self.words[rank / 64] |= mask;
        } else {
            self.words[rank / 64] &= !mask;
        }
        self.twins = OnceLock::new();
    }

    pub fn set_color(&mut self, edge: &Edge, color: Color) -> Result<()> {
        edge.check_in_host(self.k, self.n_vertices)?;
        self.set_rank(rank_sorted(edge.vertices()), color);
        Ok(())
    }

    pub fn flip_rank(&mut self, rank: usize) {
        let c = self.color_of_rank(rank).other();
        self.set_rank(rank, c);
    }

    /// Ranks of all edges of the given color, ascending.
    pub fn ranks_of(&self, color: Color) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&r| self.color_of_rank(r) == color)
    }

    pub fn edges_of(&self, color: Color) -> impl Iterator<Item = Edge> + '_ {
        let k = self.k;
        self.ranks_of(color).map(move |r| combinat::unrank_edge(r, k))
    }

    /// Little-endian packed bytes, `ceil(C(N,k) / 8)` of them.
    pub fn to_bytes(&self) -> Vec<u8> {
        let n = self.len.div_ceil(8);
        (0..n).map(|b| (self.words[b / 8] >> (8 * (b % 8))) as u8).collect()
    }

    pub fn from_bytes(k: usize, n_vertices: u32, bytes: &[u8]) -> Result<Self> {
        let mut c = Self::uniform(k, n_vertices, Color::Blue)?;
        if bytes.len() != c.len.div_ceil(8) {
            return Err(invalid(format!(
                "expected {} bytes for C({n_vertices},{k}) edges, got {}",
                c.len.div_ceil(8),
                bytes.len()
            )));
        }
        for (b, &byte) in bytes.iter().enumerate() {
            c.words[b / 8] |= (byte as u64) << (8 * (b % 8));
        }
        let before = c.words.clone();
        c.clear_tail();
        if before != c.words {
            return Err(invalid("bits set beyond the last edge"));
        }
        Ok(c)
    }

    /// Twin classes: vertices `x` and `y` share a class when swapping them is
    /// an automorphism of the coloring. Entry `v - 1` is the class id of `v`.
    pub fn twin_classes(&self) -> Arc<Vec<u8>> {
        self.twins
            .get_or_init(|| Arc::new(compute_twins(self)))
            .clone()
    }
}

fn compute_twins(c: &TwoColoring) -> Vec<u8> {
    let n = c.n_vertices as usize;
    let mut class: Vec<Option<u8>> = vec![None; n];
    let mut next = 0u8;
    let mut buf = Vec::with_capacity(c.k);
    for x in 0..n {
        if class[x].is_some() {
            continue;
        }
        class[x] = Some(next);
        for y in x + 1..n {
            if class[y].is_none() && swap_preserves(c, x as Vertex + 1, y as Vertex + 1, &mut buf) {
                class[y] = Some(next);
            }
        }
        next = next.wrapping_add(1);
    }
    class.into_iter().map(|c| c.unwrap()).collect()
}

fn swap_preserves(c: &TwoColoring, x: Vertex, y: Vertex, buf: &mut Vec<Vertex>) -> bool {
    if c.k == 0 || c.k > c.n_vertices as usize - 1 {
        return true;
    }
    let others: Vec<Vertex> = (1..=c.n_vertices).filter(|&v| v != x && v != y).collect();
    let mut ok = true;
    let mut stop = false;
    combinat::for_each_subset(&others, c.k - 1, |s| {
        if stop {
            return;
        }
        buf.clear();
        buf.extend_from_slice(s);
        buf.push(x);
        buf.sort_unstable();
        let cx = c.color_sorted(buf);
        buf.clear();
        buf.extend_from_slice(s);
        buf.push(y);
        buf.sort_unstable();
        if c.color_sorted(buf) != cx {
            ok = false;
            stop = true;
        }
    });
    ok
}

/// The red core of a split coloring: vertices `1..=a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub a: u32,
}

/// Edges inside `{1..a}` are red, every edge meeting `{a+1..N}` is blue.
pub fn split_coloring(k: usize, n_vertices: u32, spec: SplitSpec) -> Result<TwoColoring> {
    if spec.a > n_vertices {
        return Err(invalid(format!(
            "split size a = {} exceeds host size {n_vertices}",
            spec.a
        )));
    }
    let a = spec.a;
    // colex order lists every subset of {1..a} before any edge touching a+1
    let red = combinat::binom(a as usize, k) as usize;
    TwoColoring::from_rank_fn(k, n_vertices, |r| if r < red { Color::Red } else { Color::Blue })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_counts() {
        let c = split_coloring(3, 6, SplitSpec { a: 5 }).unwrap();
        assert_eq!(c.red_count(), 10);
        assert_eq!(c.edge_count() - c.red_count(), 10);
        let c = split_coloring(4, 12, SplitSpec { a: 11 }).unwrap();
        assert_eq!(c.red_count(), 330);
    }

    #[test]
    fn split_containment() {
        let c = split_coloring(3, 7, SplitSpec { a: 6 }).unwrap();
        assert_eq!(c.color(&Edge::new(vec![3, 4, 5]).unwrap()).unwrap(), Color::Red);
        assert_eq!(c.color(&Edge::new(vec![3, 4, 7]).unwrap()).unwrap(), Color::Blue);
        // the rank shortcut agrees with the definition on every edge
        let direct = TwoColoring::from_fn(3, 7, |s| {
            if s.iter().all(|&v| v <= 6) {
                Color::Red
            } else {
                Color::Blue
            }
        })
        .unwrap();
        assert_eq!(c, direct);
    }

    #[test]
    fn split_rejects_oversized_core() {
        assert!(split_coloring(3, 6, SplitSpec { a: 7 }).is_err());
    }

    #[test]
    fn bytes_roundtrip_and_tail() {
        let c = split_coloring(3, 7, SplitSpec { a: 5 }).unwrap();
        let bytes = c.to_bytes();
        assert_eq!(bytes.len(), 5); // 35 edges
        assert_eq!(TwoColoring::from_bytes(3, 7, &bytes).unwrap(), c);
        let mut bad = bytes.clone();
        bad[4] |= 0x80;
        assert!(TwoColoring::from_bytes(3, 7, &bad).is_err());
    }

    #[test]
    fn twins_of_split_coloring() {
        let c = split_coloring(3, 8, SplitSpec { a: 5 }).unwrap();
        let t = c.twin_classes();
        assert!(t[..5].iter().all(|&x| x == t[0]));
        assert!(t[5..].iter().all(|&x| x == t[5]));
        assert_ne!(t[0], t[5]);
    }

    #[test]
    fn set_and_flip() {
        let mut c = TwoColoring::uniform(3, 5, Color::Blue).unwrap();
        let e = Edge::new(vec![1, 4, 5]).unwrap();
        c.set_color(&e, Color::Red).unwrap();
        assert!(c.is_red(&e).unwrap());
        assert_eq!(c.red_count(), 1);
        c.flip_rank(rank_sorted(e.vertices()));
        assert_eq!(c.red_count(), 0);
        assert!(c.set_color(&Edge::new(vec![1, 2, 6]).unwrap(), Color::Red).is_err());
    }
}
