//! Binomial coefficients and colexicographic ranking of k-subsets.
//!
//! The colex rank of `{a_1 < ... < a_k}` (1-based labels) is
//! `sum_i C(a_i - 1, i)`. It does not depend on the host size, so colorings
//! of `K_N` restrict and extend without re-indexing.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::template::{Edge, Vertex};

/// Largest supported host size. Vertex sets are kept in `u64` masks.
pub const MAX_VERTICES: u32 = 64;

fn table() -> &'static [[u64; 65]; 65] {
    static TABLE: OnceLock<Box<[[u64; 65]; 65]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u64; 65]; 65]);
        for n in 0..65 {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1].saturating_add(if k < n { t[n - 1][k] } else { 0 });
            }
        }
        t
    })
}

/// `C(n, k)`, zero when `k > n`. Exact for `n <= 64`.
#[inline]
pub fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    if n <= 64 {
        return table()[n][k];
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

/// Colex rank of an ascending vertex slice. No validation.
#[inline]
pub fn rank_sorted(vertices: &[Vertex]) -> usize {
    let t = table();
    vertices
        .iter()
        .enumerate()
        .map(|(i, &a)| t[(a - 1) as usize][i + 1] as usize)
        .sum()
}

/// Colex rank of an edge inside `K^k_N`, validated against the host.
pub fn edge_rank(edge: &Edge, n_vertices: u32, k: usize) -> Result<usize> {
    edge.check_in_host(k, n_vertices)?;
    Ok(rank_sorted(edge.vertices()))
}

/// Inverse of [`rank_sorted`]: the k-subset with colex rank `rank`.
pub fn unrank(mut rank: usize, k: usize) -> Vec<Vertex> {
    let mut out = vec![0; k];
    for i in (1..=k).rev() {
        // largest a with C(a - 1, i) <= rank
        let mut a = i;
        while binom(a, i) as usize <= rank {
            a += 1;
        }
        rank -= binom(a - 1, i) as usize;
        out[i - 1] = a as Vertex;
    }
    out
}

pub fn unrank_edge(rank: usize, k: usize) -> Edge {
    Edge::new(unrank(rank, k)).expect("unrank yields a proper set")
}

/// Number of edges of `K^k_N`.
pub fn edge_count(n_vertices: u32, k: usize) -> usize {
    binom(n_vertices as usize, k) as usize
}

pub(crate) fn check_host(n_vertices: u32, k: usize) -> Result<()> {
    if n_vertices > MAX_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "host size {n_vertices} exceeds the supported maximum {MAX_VERTICES}"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("uniformity must be positive".into()));
    }
    Ok(())
}

/// Visits every k-subset of `items` (ascending), in lexicographic order.
pub fn for_each_subset<F: FnMut(&[Vertex])>(items: &[Vertex], k: usize, mut f: F) {
    fn go<F: FnMut(&[Vertex])>(items: &[Vertex], k: usize, start: usize, cur: &mut Vec<Vertex>, f: &mut F) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = k - cur.len();
        for i in start..items.len() {
            if items.len() - i < need {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    if k > items.len() {
        return;
    }
    let mut cur = Vec::with_capacity(k);
    go(items, k, 0, &mut cur, &mut f);
}
