//! Certificate documents and their independent checker.
//!
//! A certificate bundles a coloring with a payload claiming something about
//! it. The checker re-derives every claim from the coloring with the
//! embedder and edge-level checks only.

use serde::{Deserialize, Serialize};

use super::avoids;
use crate::coloring::{Color, ColoringFile, TwoColoring};
use crate::constructive::{BichromaticPair, JoinTrace};
use crate::embed::{verify_edge_sequence, verify_embedding, ColorClaim, Embedding};
use crate::error::{Error, Result};
use crate::template::{Edge, Kind, LooseTemplate};

pub const CERTIFICATE_FORMAT: &str = "ramsey-lab-certificate";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    /// The coloring has no red `red_target` and no blue `blue_target`.
    Witness {
        red_target: LooseTemplate,
        blue_target: LooseTemplate,
    },
    /// `edges`, in order, form a loose `structure` of one color.
    Embedding {
        color: Color,
        structure: Kind,
        edges: Vec<Edge>,
    },
    /// Red/blue edge pairs meeting in `k - 1` vertices.
    Pairs {
        pairs: Vec<BichromaticPair>,
        disjoint: bool,
    },
    JoinTrace {
        trace: JoinTrace,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub format: String,
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<String>,
    pub coloring: ColoringFile,
    pub payload: Payload,
}

impl Certificate {
    pub fn new(c: &TwoColoring, payload: Payload, claim: Option<String>) -> Self {
        Certificate {
            format: CERTIFICATE_FORMAT.into(),
            version: 1,
            claim,
            coloring: ColoringFile::hex(c),
            payload,
        }
    }

    pub fn witness(c: &TwoColoring, red: &LooseTemplate, blue: &LooseTemplate) -> Self {
        let claim = format!(
            "R({red}, {blue}) > {} at k = {}",
            c.n_vertices(),
            c.k()
        );
        Self::new(
            c,
            Payload::Witness {
                red_target: *red,
                blue_target: *blue,
            },
            Some(claim),
        )
    }

    pub fn embedding(c: &TwoColoring, e: &Embedding, color: Color) -> Self {
        Self::new(
            c,
            Payload::Embedding {
                color,
                structure: e.template.kind,
                edges: e.edges(),
            },
            Some(format!("{color} {}", e.template)),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificate serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub accepted: bool,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

fn kind_name(p: &Payload) -> &'static str {
    match p {
        Payload::Witness { .. } => "witness",
        Payload::Embedding { .. } => "embedding",
        Payload::Pairs { .. } => "pairs",
        Payload::JoinTrace { .. } => "join-trace",
    }
}

fn edge_color(c: &TwoColoring, e: &Edge) -> std::result::Result<Color, String> {
    e.check_in_host(c.k(), c.n_vertices()).map_err(|x| format!("edge {e}: {x}"))?;
    Ok(c.color_sorted(e.vertices()))
}

fn expect_color(c: &TwoColoring, e: &Edge, want: Color) -> std::result::Result<(), String> {
    let got = edge_color(c, e)?;
    if got != want {
        return Err(format!("edge-color-mismatch: {e} is {got}, recorded {want}"));
    }
    Ok(())
}

fn check_pairs(c: &TwoColoring, pairs: &[BichromaticPair], disjoint: bool) -> std::result::Result<(), String> {
    let k = c.k();
    let mut used = 0u64;
    for p in pairs {
        expect_color(c, &p.red, Color::Red)?;
        expect_color(c, &p.blue, Color::Blue)?;
        let s = p.red.intersection_size(&p.blue);
        if s + 1 != k {
            return Err(format!("pair {} / {} shares {s} vertices, expected {}", p.red, p.blue, k - 1));
        }
        let mask = p.red.mask() | p.blue.mask();
        if disjoint && used & mask != 0 {
            return Err(format!("pair {} / {} meets an earlier pair", p.red, p.blue));
        }
        used |= mask;
    }
    Ok(())
}

fn check_join(c: &TwoColoring, t: &JoinTrace) -> std::result::Result<(), String> {
    for s in &t.steps {
        expect_color(c, &s.g.edge, s.g.color)?;
        expect_color(c, &s.h.edge, s.h.color)?;
        if let Some(ch) = &s.chosen {
            if *ch != s.g.edge && *ch != s.h.edge {
                return Err(format!("step {}: carried edge {ch} was not tested", s.label));
            }
            expect_color(c, ch, Color::Blue)?;
        }
    }
    let mut cycle = t.outcome.cycle().clone();
    cycle.claimed_color = ColorClaim::from(t.outcome.color());
    verify_embedding(c, &cycle).map_err(|f| f.to_string())
}

fn check(c: &TwoColoring, p: &Payload) -> Result<std::result::Result<(), String>> {
    Ok(match p {
        Payload::Witness { red_target, blue_target } => {
            for t in [red_target, blue_target] {
                if t.k != c.k() {
                    return Err(Error::MalformedCertificate(format!(
                        "target {t} has uniformity {}, coloring has {}",
                        t.k,
                        c.k()
                    )));
                }
            }
            avoids(c, red_target, blue_target)?
        }
        Payload::Embedding { color, structure, edges } => {
            verify_edge_sequence(c, *structure, edges, Some(*color)).map_err(|f| f.to_string())
        }
        Payload::Pairs { pairs, disjoint } => check_pairs(c, pairs, *disjoint),
        Payload::JoinTrace { trace } => check_join(c, trace),
    })
}

/// Parses and re-validates a certificate document.
pub fn verify_certificate(doc: &str) -> Result<CertificateCheck> {
    let cert: Certificate =
        serde_json::from_str(doc).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
    if cert.format != CERTIFICATE_FORMAT {
        return Err(Error::MalformedCertificate(format!("unknown format `{}`", cert.format)));
    }
    if cert.version != 1 {
        return Err(Error::MalformedCertificate(format!("unsupported version {}", cert.version)));
    }
    let c = cert
        .coloring
        .to_coloring()
        .map_err(|e| Error::MalformedCertificate(format!("coloring: {e}")))?;
    let verdict = check(&c, &cert.payload)?;
    Ok(CertificateCheck {
        accepted: verdict.is_ok(),
        kind: kind_name(&cert.payload).into(),
        reason: verdict.err(),
    })
}
