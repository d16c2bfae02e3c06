use serde::{Deserialize, Serialize};

use super::{Color, TwoColoring};
use crate::error::{invalid, Result};
use crate::template::{Edge, Vertex};

pub const ENCODING_HEX: &str = "colex-bits-hex";
const ENCODING_EXPLICIT: &str = "explicit";

/// On-disk JSON form of a [`TwoColoring`].
///
/// The hex form stores `ceil(C(N,k)/8)` bytes; bit `r` of the coloring (the
/// edge of colex rank `r`) is bit `r % 8` of byte `r / 8`, and 1 means red.
/// The explicit form lists the red edges instead.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub k: usize,
    pub n_vertices: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub encoding: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub red_bit: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bits: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub red_edges: Option<Vec<Vec<Vertex>>>,
}

impl ColoringFile {
    pub fn hex(c: &TwoColoring) -> Self {
        ColoringFile {
            k: c.k(),
            n_vertices: c.n_vertices(),
            encoding: Some(ENCODING_HEX.into()),
            red_bit: Some(1),
            bits: Some(hex::encode(c.to_bytes())),
            red_edges: None,
        }
    }

    pub fn explicit(c: &TwoColoring) -> Self {
        ColoringFile {
            k: c.k(),
            n_vertices: c.n_vertices(),
            encoding: Some(ENCODING_EXPLICIT.into()),
            red_bit: None,
            bits: None,
            red_edges: Some(c.edges_of(Color::Red).map(Vec::from).collect()),
        }
    }

    pub fn to_coloring(&self) -> Result<TwoColoring> {
        if let Some(rb) = self.red_bit {
            if rb != 1 {
                return Err(invalid(format!("unsupported red_bit {rb}; only 1 is defined")));
            }
        }
        match (&self.bits, &self.red_edges) {
            (Some(bits), None) => {
                if let Some(enc) = &self.encoding {
                    if enc != ENCODING_HEX {
                        return Err(invalid(format!("unknown encoding `{enc}` for bits")));
                    }
                }
                let bytes = hex::decode(bits).map_err(|e| invalid(format!("bad hex: {e}")))?;
                TwoColoring::from_bytes(self.k, self.n_vertices, &bytes)
            }
            (None, Some(red)) => {
                let mut c = TwoColoring::uniform(self.k, self.n_vertices, Color::Blue)?;
                for e in red {
                    c.set_color(&Edge::from_slice(e)?, Color::Red)?;
                }
                Ok(c)
            }
            (Some(_), Some(_)) => Err(invalid("coloring has both `bits` and `red_edges`")),
            (None, None) => Err(invalid("coloring has neither `bits` nor `red_edges`")),
        }
    }
}

impl TwoColoring {
    pub fn to_json(&self, explicit: bool) -> serde_json::Value {
        let f = if explicit {
            ColoringFile::explicit(self)
        } else {
            ColoringFile::hex(self)
        };
        serde_json::to_value(f).expect("coloring file serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let f: ColoringFile = serde_json::from_value(v.clone())?;
        f.to_coloring()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let f: ColoringFile = serde_json::from_str(s)?;
        f.to_coloring()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{split_coloring, SplitSpec};
    use proptest::prelude::*;

    #[test]
    fn hex_layout_is_little_endian_within_bytes() {
        // red edges {1,2,3} (rank 0) and {1,2,5} (rank 4), N = 5: 10 edges -> 2 bytes
        let mut c = TwoColoring::uniform(3, 5, Color::Blue).unwrap();
        c.set_color(&Edge::new(vec![1, 2, 3]).unwrap(), Color::Red).unwrap();
        c.set_color(&Edge::new(vec![1, 2, 5]).unwrap(), Color::Red).unwrap();
        let f = ColoringFile::hex(&c);
        assert_eq!(f.bits.as_deref(), Some("1100"));
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.contains("\"encoding\":\"colex-bits-hex\""));
        assert!(json.contains("\"red_bit\":1"));
    }

    #[test]
    fn explicit_form_reads_back() {
        let c = split_coloring(3, 6, SplitSpec { a: 4 }).unwrap();
        let v = c.to_json(true);
        assert_eq!(v["red_edges"].as_array().unwrap().len(), 4);
        assert_eq!(TwoColoring::from_json(&v).unwrap(), c);
    }

    #[test]
    fn rejects_conflicting_forms() {
        let mut f = ColoringFile::hex(&TwoColoring::uniform(3, 4, Color::Red).unwrap());
        f.red_edges = Some(vec![]);
        assert!(f.to_coloring().is_err());
        f.red_edges = None;
        f.red_bit = Some(0);
        assert!(f.to_coloring().is_err());
    }

    proptest! {
        #[test]
        fn hex_roundtrip(n in 3u32..10, seed in any::<u64>()) {
            let c = TwoColoring::from_rank_fn(3, n, |r| {
                if (seed.rotate_left(r as u32 % 64) ^ r as u64) & 1 == 1 { Color::Red } else { Color::Blue }
            }).unwrap();
            let s = serde_json::to_string(&c.to_json(false)).unwrap();
            prop_assert_eq!(TwoColoring::from_json_str(&s).unwrap(), c);
        }
    }
}
