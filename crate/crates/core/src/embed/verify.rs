use serde::{Deserialize, Serialize};

use super::{ColorClaim, Embedding};
use crate::coloring::{Color, TwoColoring};
use crate::template::{Edge, Kind, Vertex};

/// Why an embedding or edge sequence was rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum VerifyFailure {
    IncompatibleUniformity { expected: usize, got: usize },
    WrongLength { expected: usize, got: usize },
    LabelOutOfRange { label: Vertex },
    NotInjective { vertex: Vertex },
    IntersectionPattern { i: usize, j: usize },
    EdgeColorMismatch { edge: Edge, expected: Color },
}

impl VerifyFailure {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            VerifyFailure::IncompatibleUniformity { .. } => "incompatible-uniformity",
            VerifyFailure::WrongLength { .. } => "wrong-length",
            VerifyFailure::LabelOutOfRange { .. } => "label-out-of-range",
            VerifyFailure::NotInjective { .. } => "not-injective",
            VerifyFailure::IntersectionPattern { .. } => "intersection-pattern",
            VerifyFailure::EdgeColorMismatch { .. } => "edge-color-mismatch",
        }
    }
}

impl std::fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifyFailure::IncompatibleUniformity { expected, got } => {
                write!(f, "incompatible-uniformity: expected {expected}, got {got}")
            }
            VerifyFailure::WrongLength { expected, got } => {
                write!(f, "wrong-length: expected {expected}, got {got}")
            }
            VerifyFailure::LabelOutOfRange { label } => write!(f, "label-out-of-range: {label}"),
            VerifyFailure::NotInjective { vertex } => write!(f, "not-injective: {vertex} repeated"),
            VerifyFailure::IntersectionPattern { i, j } => {
                write!(f, "intersection-pattern: edges {i} and {j}")
            }
            VerifyFailure::EdgeColorMismatch { edge, expected } => {
                write!(f, "edge-color-mismatch: {edge} is not {expected}")
            }
        }
    }
}

pub type Verification = std::result::Result<(), VerifyFailure>;

/// Checks an embedding against a coloring: length, range, injectivity, the
/// loose intersection pattern and, unless the claim is `any`, every edge's color.
pub fn verify_embedding(c: &TwoColoring, e: &Embedding) -> Verification {
    let t = &e.template;
    if t.k != c.k() {
        return Err(VerifyFailure::IncompatibleUniformity {
            expected: c.k(),
            got: t.k,
        });
    }
    if e.assignment.len() != t.vertex_count() {
        return Err(VerifyFailure::WrongLength {
            expected: t.vertex_count(),
            got: e.assignment.len(),
        });
    }
    let mut seen = vec![false; c.n_vertices() as usize + 1];
    for &h in &e.assignment {
        if h == 0 || h > c.n_vertices() {
            return Err(VerifyFailure::LabelOutOfRange { label: h });
        }
        if std::mem::replace(&mut seen[h as usize], true) {
            return Err(VerifyFailure::NotInjective { vertex: h });
        }
    }
    let edges = e.edges();
    check_pattern(&edges, t.kind)?;
    if let Some(color) = claimed(e.claimed_color) {
        check_colors(c, &edges, color)?;
    }
    Ok(())
}

fn claimed(claim: ColorClaim) -> Option<Color> {
    match claim {
        ColorClaim::Red => Some(Color::Red),
        ColorClaim::Blue => Some(Color::Blue),
        ColorClaim::Any => None,
    }
}

fn check_pattern(edges: &[Edge], kind: Kind) -> Verification {
    let n = edges.len();
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (kind == Kind::Cycle && i == 0 && j == n - 1);
            let want = usize::from(adjacent);
            if edges[i].intersection_size(&edges[j]) != want {
                return Err(VerifyFailure::IntersectionPattern { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(())
}

fn check_colors(c: &TwoColoring, edges: &[Edge], color: Color) -> Verification {
    for e in edges {
        if c.color_sorted(e.vertices()) != color {
            return Err(VerifyFailure::EdgeColorMismatch {
                edge: e.clone(),
                expected: color,
            });
        }
    }
    Ok(())
}

/// Checks that an ordered list of host edges is a loose path or cycle of the
/// given color. Works on raw edges, so certificates need not carry an
/// assignment.
pub fn verify_edge_sequence(c: &TwoColoring, kind: Kind, edges: &[Edge], color: Option<Color>) -> Verification {
    let k = c.k();
    let min = if kind == Kind::Cycle { 3 } else { 1 };
    if edges.len() < min {
        return Err(VerifyFailure::WrongLength {
            expected: min,
            got: edges.len(),
        });
    }
    for e in edges {
        if e.len() != k {
            return Err(VerifyFailure::IncompatibleUniformity { expected: k, got: e.len() });
        }
        if let Some(&max) = e.vertices().last() {
            if max > c.n_vertices() {
                return Err(VerifyFailure::LabelOutOfRange { label: max });
            }
        }
    }
    check_pattern(edges, kind)?;
    // three edges pairwise meeting in one common vertex pass the pairwise test
    // but are not a loose cycle; the vertex count rules that out
    let mut all: Vec<Vertex> = edges.iter().flat_map(|e| e.vertices().iter().copied()).collect();
    all.sort_unstable();
    all.dedup();
    let n = edges.len();
    let expected = match kind {
        Kind::Path => n * (k - 1) + 1,
        Kind::Cycle => n * (k - 1),
    };
    if all.len() != expected {
        return Err(VerifyFailure::IntersectionPattern { i: 1, j: n });
    }
    if let Some(color) = color {
        check_colors(c, edges, color)?;
    }
    Ok(())
}
