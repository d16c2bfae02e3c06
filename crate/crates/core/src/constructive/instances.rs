//! Seeded random instances for the constructive procedures. Generators that
//! condition on a hypothesis use rejection sampling and return `None` when
//! every attempt was rejected.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::{split_coloring, Color, SplitSpec, TwoColoring};
use crate::embed::{find_embedding, is_maximal_wrt, ColorClaim, Embedding, MaximalityQuery, SearchOptions};
use crate::error::Result;
use crate::template::{cycle_template, path_template, LooseTemplate, Vertex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each edge red independently with probability `p_red`.
pub fn random_coloring(k: usize, n_vertices: u32, p_red: f64, seed: u64) -> Result<TwoColoring> {
    let mut r = rng(seed);
    TwoColoring::from_rank_fn(k, n_vertices, |_| if r.gen_bool(p_red) { Color::Red } else { Color::Blue })
}

/// A split coloring with `flips` uniformly chosen edges recolored.
pub fn split_with_flips(k: usize, n_vertices: u32, a: u32, flips: usize, seed: u64) -> Result<TwoColoring> {
    let mut c = split_coloring(k, n_vertices, SplitSpec { a })?;
    let mut r = rng(seed);
    for _ in 0..flips {
        let rank = r.gen_range(0..c.edge_count());
        c.flip_rank(rank);
    }
    Ok(c)
}

/// The identity embedding of `t` on vertices `offset + 1, offset + 2, ...`.
pub fn planted(t: &LooseTemplate, offset: u32, color: Color) -> Embedding {
    Embedding {
        template: *t,
        assignment: (1..=t.vertex_count() as u32).map(|j| j + offset).collect(),
        claimed_color: ColorClaim::from(color),
    }
}

/// Forces every edge of `e` to `color`.
pub fn paint(c: &mut TwoColoring, e: &Embedding, color: Color) {
    for edge in e.edges() {
        c.set_color(&edge, color).expect("edge inside the host");
    }
}

/// A maximal red 3-uniform path.
#[derive(Clone, Debug)]
pub struct PathInstance {
    pub coloring: TwoColoring,
    pub path: Embedding,
    pub w: Vec<Vertex>,
    pub seed: u64,
}

/// A red path on vertices `1..=2n+1`, `W` on the next `w_size` vertices,
/// other edges red with probability `p_red`; rejected until the path is
/// maximal with respect to `W`.
pub fn maximal_path_instance(n: usize, w_size: usize, p_red: f64, seed: u64, attempts: usize) -> Result<Option<PathInstance>> {
    let t = path_template(3, n)?;
    let host = t.vertex_count() as u32 + w_size as u32;
    let path = planted(&t, 0, Color::Red);
    let w: Vec<Vertex> = (t.vertex_count() as u32 + 1..=host).collect();
    for a in 0..attempts as u64 {
        let s = seed.wrapping_mul(1_000_003).wrapping_add(a);
        let mut c = random_coloring(3, host, p_red, s)?;
        paint(&mut c, &path, Color::Red);
        let q = MaximalityQuery {
            path: path.clone(),
            w: w.clone(),
        };
        if is_maximal_wrt(&c, &q)? {
            return Ok(Some(PathInstance {
                coloring: c,
                path,
                w,
                seed: s,
            }));
        }
    }
    Ok(None)
}

/// Two disjoint red cycles `C_n` on `1..=(k-1)n` and `C_m` right after it,
/// on a host of exactly `(k-1)(n+m)` vertices.
pub fn two_red_cycles(k: usize, n: usize, m: usize, p_red: f64, seed: u64) -> Result<(TwoColoring, Embedding, Embedding)> {
    let t1 = cycle_template(k, n)?;
    let t2 = cycle_template(k, m)?;
    let host = (t1.vertex_count() + t2.vertex_count()) as u32;
    let mut c = random_coloring(k, host, p_red, seed)?;
    let c1 = planted(&t1, 0, Color::Red);
    let c2 = planted(&t2, t1.vertex_count() as u32, Color::Red);
    paint(&mut c, &c1, Color::Red);
    paint(&mut c, &c2, Color::Red);
    Ok((c, c1, c2))
}

/// A red `C_{n-1}` on `1..=2(n-1)` in a host of `2n + floor((m-1)/2)`
/// vertices, otherwise blue. Up to `tries` random edges are then turned red
/// one at a time, each kept only if no red `C_n` appears.
pub fn shorter_cycle_instance(n: usize, m: usize, tries: usize, seed: u64) -> Result<(TwoColoring, Embedding)> {
    let t = cycle_template(3, n - 1)?;
    let host = (2 * n + (m - 1) / 2) as u32;
    let cycle = planted(&t, 0, Color::Red);
    let big = cycle_template(3, n)?;
    let mut c = TwoColoring::uniform(3, host, Color::Blue)?;
    paint(&mut c, &cycle, Color::Red);
    let mut r = rng(seed);
    for _ in 0..tries {
        let rank = r.gen_range(0..c.edge_count());
        if c.color_of_rank(rank) == Color::Red {
            continue;
        }
        c.set_rank(rank, Color::Red);
        if !find_embedding(&c, Color::Red, &big, SearchOptions::default())?.is_absent() {
            c.set_rank(rank, Color::Blue);
        }
    }
    Ok((c, cycle))
}
