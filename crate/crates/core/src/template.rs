//! Vertex and edge primitives, and the abstract loose path / loose cycle
//! templates.
//!
//! Vertex labels are 1-based everywhere. Template edge `i` (also 1-based) is
//! `{1, ..., k} + (i - 1)(k - 1)`; for cycles the labels are reduced into
//! `1..=n(k-1)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub type Vertex = u32;

/// A hyperedge: a strictly ascending set of vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Edge(Vec<Vertex>);

impl Edge {
    /// Builds an edge from labels in any order. Rejects duplicates and label 0.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.is_empty() {
            return Err(Error::MalformedEdge(vertices, "empty".into()));
        }
        if vertices[0] == 0 {
            return Err(Error::MalformedEdge(vertices, "labels are 1-based".into()));
        }
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedEdge(vertices, "repeated vertex".into()));
        }
        Ok(Edge(vertices))
    }

    pub fn from_slice(vertices: &[Vertex]) -> Result<Self> {
        Self::new(vertices.to_vec())
    }

    /// Checks the edge against a host with `n_vertices` vertices and uniformity `k`.
    pub fn check_in_host(&self, k: usize, n_vertices: u32) -> Result<()> {
        if self.0.len() != k {
            return Err(Error::IncompatibleUniformity {
                expected: k,
                got: self.0.len(),
            });
        }
        let max = *self.0.last().unwrap();
        if max > n_vertices {
            return Err(Error::LabelOutOfRange {
                label: max,
                max: n_vertices,
            });
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn intersection_size(&self, other: &Edge) -> usize {
        self.0.iter().filter(|v| other.contains(**v)).count()
    }

    pub fn intersection(&self, other: &Edge) -> Vec<Vertex> {
        self.0.iter().copied().filter(|v| other.contains(*v)).collect()
    }

    pub fn difference(&self, other: &Edge) -> Vec<Vertex> {
        self.0.iter().copied().filter(|v| !other.contains(*v)).collect()
    }

    /// Bitmask of the vertex labels (labels must be at most 64).
    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &v| m | 1u64 << (v - 1))
    }
}

impl TryFrom<Vec<Vertex>> for Edge {
    type Error = Error;

    fn try_from(v: Vec<Vertex>) -> Result<Self> {
        Edge::new(v)
    }
}

impl From<Edge> for Vec<Vertex> {
    fn from(e: Edge) -> Self {
        e.0
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Path,
    Cycle,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Path => f.write_str("path"),
            Kind::Cycle => f.write_str("cycle"),
        }
    }
}

/// An abstract k-uniform loose path `P^k_n` or loose cycle `C^k_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LooseTemplate {
    pub kind: Kind,
    pub k: usize,
    pub n: usize,
}

/// First and last vertex of a template edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeEndpoints {
    pub first: Vertex,
    pub last: Vertex,
}

pub fn path_template(k: usize, n: usize) -> Result<LooseTemplate> {
    LooseTemplate::new(Kind::Path, k, n)
}

pub fn cycle_template(k: usize, n: usize) -> Result<LooseTemplate> {
    LooseTemplate::new(Kind::Cycle, k, n)
}

impl LooseTemplate {
    pub fn new(kind: Kind, k: usize, n: usize) -> Result<Self> {
        if k < 3 {
            return Err(invalid(format!("uniformity k = {k} must be at least 3")));
        }
        match kind {
            Kind::Path if n < 1 => Err(invalid("a loose path needs at least one edge")),
            Kind::Cycle if n < 3 => Err(invalid(format!(
                "a loose cycle needs at least 3 edges, got {n}"
            ))),
            _ => Ok(LooseTemplate { kind, k, n }),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self.kind {
            Kind::Path => self.n * (self.k - 1) + 1,
            Kind::Cycle => self.n * (self.k - 1),
        }
    }

    /// Reduces a raw subscript `j >= 1` to a template label (mod n(k-1) for cycles).
    pub fn label(&self, j: usize) -> Vertex {
        match self.kind {
            Kind::Path => j as Vertex,
            Kind::Cycle => {
                let m = self.vertex_count();
                (((j - 1) % m) + 1) as Vertex
            }
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.n,
            });
        }
        Ok(())
    }

    /// Vertices of edge `i` in path order, from its first to its last vertex.
    pub fn edge_sequence(&self, i: usize) -> Result<Vec<Vertex>> {
        self.check_index(i)?;
        let start = (i - 1) * (self.k - 1) + 1;
        Ok((start..start + self.k).map(|j| self.label(j)).collect())
    }

    /// Edge `i` (1-based) as a vertex set.
    pub fn edge(&self, i: usize) -> Result<Edge> {
        Edge::new(self.edge_sequence(i)?)
    }

    pub fn edges(&self) -> Vec<Edge> {
        (1..=self.n).map(|i| self.edge(i).unwrap()).collect()
    }

    pub fn endpoints(&self, i: usize) -> Result<EdgeEndpoints> {
        self.check_index(i)?;
        Ok(EdgeEndpoints {
            first: self.label((i - 1) * (self.k - 1) + 1),
            last: self.label(i * (self.k - 1) + 1),
        })
    }

    /// Whether template edges `i` and `j` are consecutive (cyclically for cycles).
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        b == a + 1 || (self.kind == Kind::Cycle && a == 1 && b == self.n)
    }
}

impl fmt::Display for LooseTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind, self.n)
    }
}

/// A target specification `kind:length` without uniformity, e.g. `cycle:3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TargetSpec {
    pub kind: Kind,
    pub n: usize,
}

impl TargetSpec {
    pub fn with_k(&self, k: usize) -> Result<LooseTemplate> {
        LooseTemplate::new(self.kind, k, self.n)
    }
}

impl FromStr for TargetSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, len) = s
            .split_once(':')
            .ok_or_else(|| invalid(format!("target `{s}` is not of the form kind:length")))?;
        let kind = match kind {
            "path" | "P" | "p" => Kind::Path,
            "cycle" | "C" | "c" => Kind::Cycle,
            other => return Err(invalid(format!("unknown target kind `{other}`"))),
        };
        let n = len
            .parse()
            .map_err(|_| invalid(format!("bad target length `{len}`")))?;
        Ok(TargetSpec { kind, n })
    }
}

impl fmt::Display for TargetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind, self.n)
    }
}

/// Shifts every label by `t` inside `1..=modulus`: `x -> ((x + t - 1) mod modulus) + 1`.
pub fn shift(set: &[Vertex], t: i64, modulus: u32) -> Result<Vec<Vertex>> {
    if modulus == 0 {
        return Err(invalid("modulus must be at least 1"));
    }
    let m = modulus as i64;
    let mut out = Vec::with_capacity(set.len());
    for &x in set {
        if x == 0 || x > modulus {
            return Err(Error::LabelOutOfRange {
                label: x,
                max: modulus,
            });
        }
        out.push(((x as i64 + t - 1).rem_euclid(m) + 1) as Vertex);
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sets(t: &LooseTemplate) -> Vec<Vec<Vertex>> {
        t.edges().into_iter().map(Vec::from).collect()
    }

    #[test]
    fn path_examples() {
        assert_eq!(sets(&path_template(3, 2).unwrap()), vec![vec![1, 2, 3], vec![3, 4, 5]]);
        assert_eq!(sets(&path_template(4, 1).unwrap()), vec![vec![1, 2, 3, 4]]);
        assert_eq!(
            sets(&path_template(3, 3).unwrap()),
            vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 7]]
        );
    }

    #[test]
    fn cycle_examples() {
        assert_eq!(
            sets(&cycle_template(3, 3).unwrap()),
            vec![vec![1, 2, 3], vec![3, 4, 5], vec![1, 5, 6]]
        );
        assert_eq!(
            sets(&cycle_template(4, 3).unwrap()),
            vec![vec![1, 2, 3, 4], vec![4, 5, 6, 7], vec![1, 7, 8, 9]]
        );
        assert_eq!(
            sets(&cycle_template(3, 4).unwrap()),
            vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 7], vec![1, 7, 8]]
        );
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(path_template(2, 3), Err(Error::InvalidParameter(_))));
        assert!(matches!(path_template(3, 0), Err(Error::InvalidParameter(_))));
        assert!(matches!(cycle_template(3, 2), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn endpoint_examples() {
        let p = path_template(3, 2).unwrap();
        assert_eq!(p.endpoints(2).unwrap(), EdgeEndpoints { first: 3, last: 5 });
        assert_eq!(p.endpoints(1).unwrap(), EdgeEndpoints { first: 1, last: 3 });
        let c = cycle_template(3, 3).unwrap();
        assert_eq!(c.endpoints(3).unwrap(), EdgeEndpoints { first: 5, last: 1 });
        assert!(matches!(p.endpoints(3), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(p.endpoints(0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift(&[1, 2, 3], 2, 6).unwrap(), vec![3, 4, 5]);
        assert_eq!(shift(&[5, 6], 2, 6).unwrap(), vec![1, 2]);
        assert_eq!(shift(&[1, 2, 3], 0, 6).unwrap(), vec![1, 2, 3]);
        assert!(matches!(shift(&[7], 1, 6), Err(Error::LabelOutOfRange { .. })));
    }

    #[test]
    fn target_spec_parsing() {
        let t: TargetSpec = "cycle:3".parse().unwrap();
        assert_eq!(t, TargetSpec { kind: Kind::Cycle, n: 3 });
        assert_eq!("path:4".parse::<TargetSpec>().unwrap().kind, Kind::Path);
        assert!("tight:3".parse::<TargetSpec>().is_err());
        assert!("cycle".parse::<TargetSpec>().is_err());
    }

    #[test]
    fn edge_rejects_duplicates_and_zero() {
        assert!(Edge::new(vec![1, 1, 2]).is_err());
        assert!(Edge::new(vec![0, 1, 2]).is_err());
        assert_eq!(Edge::new(vec![3, 1, 2]).unwrap().vertices(), &[1, 2, 3]);
    }

    proptest! {
        #[test]
        fn endpoints_chain(k in 3usize..7, n in 3usize..9, cyc in any::<bool>()) {
            let t = if cyc { cycle_template(k, n) } else { path_template(k, n) }.unwrap();
            for i in 1..n {
                prop_assert_eq!(t.endpoints(i).unwrap().last, t.endpoints(i + 1).unwrap().first);
            }
            if cyc {
                prop_assert_eq!(t.endpoints(n).unwrap().last, t.endpoints(1).unwrap().first);
            }
        }

        #[test]
        fn shift_composes(set in proptest::collection::btree_set(1u32..=12, 1..6),
                          a in -30i64..30, b in -30i64..30) {
            let s: Vec<u32> = set.into_iter().collect();
            let once = shift(&shift(&s, a, 12).unwrap(), b, 12).unwrap();
            prop_assert_eq!(once, shift(&s, a + b, 12).unwrap());
            prop_assert_eq!(shift(&s, 12, 12).unwrap(), s);
        }
    }
}
