//! Ramsey values: ascending scans with the arrowing engine, and tables
//! derived from cycle-cycle values by the reduction theorems.

use serde::{Deserialize, Serialize};

use super::{avoids, decide_arrowing, ArrowOptions, Budget, Stats, Status};
use crate::coloring::{Color, TwoColoring};
use crate::combinat::MAX_VERTICES;
use crate::error::{invalid, Error, Result};
use crate::template::{Kind, TargetSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    PaperFormula,
    SearchVerified,
    WitnessOnly,
    TheoremDerived,
    TheoremExtended,
    BoundsOnly,
}

/// A claimed value of `R(red, blue)` for `k`-uniform targets. `value` is set
/// when the number is pinned; otherwise `[lower, upper]` is what is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyClaim {
    pub k: usize,
    pub red: TargetSpec,
    pub blue: TargetSpec,
    /// Two letters, red kind first: `PP`, `PC`, `CP` or `CC`.
    pub pair: String,
    pub value: Option<u32>,
    pub lower: u32,
    pub upper: Option<u32>,
    pub provenance: Provenance,
    pub chain: Vec<String>,
}

fn letter(kind: Kind) -> char {
    match kind {
        Kind::Path => 'P',
        Kind::Cycle => 'C',
    }
}

fn pair_name(red: TargetSpec, blue: TargetSpec) -> String {
    [letter(red.kind), letter(blue.kind)].iter().collect()
}

impl RamseyClaim {
    fn exact(k: usize, red: TargetSpec, blue: TargetSpec, value: u32, provenance: Provenance, chain: Vec<String>) -> Self {
        RamseyClaim {
            k,
            red,
            blue,
            pair: pair_name(red, blue),
            value: Some(value),
            lower: value,
            upper: Some(value),
            provenance,
            chain,
        }
    }

    pub fn label(&self) -> String {
        format!("R({}, {}) at k = {}", self.red, self.blue, self.k)
    }
}

/// `(k-1)n + floor((m-1)/2)`, the cycle-cycle value.
pub fn cycle_value(k: usize, n: usize, m: usize) -> u32 {
    ((k - 1) * n + (m - 1) / 2) as u32
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseValue {
    pub n: usize,
    pub m: usize,
    pub value: u32,
    pub provenance: Provenance,
    pub citation: String,
}

/// Cycle-cycle values established in the literature this crate implements:
/// the whole range `3 <= m <= n <= n_max` for `k = 3`, and the `m = 3` row for
/// `n <= 6` when `k >= 4`.
pub fn known_cycle_values(k: usize, n_max: usize) -> Result<Vec<BaseValue>> {
    if k < 3 {
        return Err(invalid(format!("uniformity k = {k} must be at least 3")));
    }
    let mut out = Vec::new();
    if k == 3 {
        for n in 3..=n_max {
            for m in 3..=n {
                out.push(BaseValue {
                    n,
                    m,
                    value: cycle_value(3, n, m),
                    provenance: Provenance::PaperFormula,
                    citation: "cycle-cycle values for k = 3".into(),
                });
            }
        }
    } else {
        let names = [
            (3, "R(C3, C3) = 3k - 2"),
            (4, "R(C4, C3) = 4k - 3"),
            (5, "R(C5, C3) = 5k - 4"),
            (6, "R(C6, C3) = 6k - 5"),
        ];
        for (n, why) in names.into_iter().filter(|&(n, _)| n <= n_max) {
            out.push(BaseValue {
                n,
                m: 3,
                value: cycle_value(k, n, 3),
                provenance: Provenance::PaperFormula,
                citation: why.into(),
            });
        }
    }
    Ok(out)
}

/// Path-cycle and path-path values implied by verified cycle-cycle values,
/// plus, for `k >= 4`, cycle-cycle values for every `n` up to `n_max` once
/// some `m` has all of `n in [m, 2m]` covered.
pub fn derive_table(k: usize, base: &[BaseValue], n_max: usize) -> Result<Vec<RamseyClaim>> {
    if k < 3 {
        return Err(invalid(format!("uniformity k = {k} must be at least 3")));
    }
    let cyc = |n| TargetSpec { kind: Kind::Cycle, n };
    let path = |n| TargetSpec { kind: Kind::Path, n };
    let mut out: Vec<RamseyClaim> = Vec::new();
    let mut push = |c: RamseyClaim| {
        if !out.iter().any(|o| o.red == c.red && o.blue == c.blue) {
            out.push(c);
        }
    };
    for b in base {
        if b.m < 3 || b.n < b.m {
            return Err(invalid(format!("base ({}, {}) needs n >= m >= 3", b.n, b.m)));
        }
        let want = cycle_value(k, b.n, b.m);
        if b.value != want {
            return Err(Error::InconsistentBase(format!(
                "R(C{n}, C{m}) = {v} at k = {k} contradicts (k-1)n + floor((m-1)/2) = {want}",
                n = b.n,
                m = b.m,
                v = b.value
            )));
        }
    }
    for b in base {
        let (n, m) = (b.n, b.m);
        let src = format!("R(C{n}, C{m}) = {} [{}]", b.value, b.citation);
        let step = |s: &str| vec![src.clone(), s.to_string()];
        let kn = (k - 1) * n;
        push(RamseyClaim::exact(k, cyc(n), cyc(m), b.value, b.provenance, vec![src.clone()]));
        push(RamseyClaim::exact(
            k,
            path(n),
            cyc(m),
            (kn + (m + 1) / 2) as u32,
            Provenance::TheoremDerived,
            step("cycle value gives R(Pn, Cm) = (k-1)n + floor((m+1)/2)"),
        ));
        push(RamseyClaim::exact(
            k,
            path(n),
            path(m - 1),
            (kn + m / 2) as u32,
            Provenance::TheoremDerived,
            step("cycle value gives R(Pn, P(m-1)) = (k-1)n + floor(m/2)"),
        ));
        if n == m {
            push(RamseyClaim::exact(
                k,
                path(n),
                path(n),
                (kn + (n + 1) / 2) as u32,
                Provenance::TheoremDerived,
                step("diagonal cycle value gives R(Pn, Pn) = (k-1)n + floor((n+1)/2)"),
            ));
        }
    }
    if k >= 4 {
        let mut ms: Vec<usize> = base.iter().map(|b| b.m).collect();
        ms.sort_unstable();
        ms.dedup();
        for m in ms {
            let covered = (m..=2 * m).all(|n| base.iter().any(|b| b.n == n && b.m == m));
            if !covered {
                continue;
            }
            for n in 2 * m + 1..=n_max {
                push(RamseyClaim::exact(
                    k,
                    cyc(n),
                    cyc(m),
                    cycle_value(k, n, m),
                    Provenance::TheoremExtended,
                    vec![
                        format!("R(Cn, C{m}) known for every n in [{m}, {}]", 2 * m),
                        format!("k >= 4: the cycle formula for n in [m, 2m] extends to all n >= m"),
                    ],
                ));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanStep {
    pub n_vertices: u32,
    pub status: Status,
    pub stats: Stats,
}

#[derive(Clone, Debug)]
pub struct RamseyComputation {
    pub claim: RamseyClaim,
    /// A coloring on `lower - 1` vertices avoiding both targets.
    pub witness: Option<TwoColoring>,
    pub scan: Vec<ScanStep>,
}

/// Scans `N` upwards from the larger target's vertex count until the first
/// UNSAT verdict or `max_n`. Below the start a one-color coloring avoids both
/// targets.
pub fn compute_ramsey(
    k: usize,
    red: TargetSpec,
    blue: TargetSpec,
    budget: Budget,
    options: ArrowOptions,
    max_n: Option<u32>,
) -> Result<RamseyComputation> {
    let rt = red.with_k(k)?;
    let bt = blue.with_k(k)?;
    let (rv, bv) = (rt.vertex_count() as u32, bt.vertex_count() as u32);
    let start = rv.max(bv);
    let max_n = max_n.unwrap_or(MAX_VERTICES).min(MAX_VERTICES);
    if start > max_n {
        return Err(invalid(format!("targets need {start} vertices, above the scan limit {max_n}")));
    }
    let trivial_color = if rv >= bv { Color::Red } else { Color::Blue };
    let trivial = TwoColoring::uniform(k, start - 1, trivial_color)?;
    if let Err(why) = avoids(&trivial, &rt, &bt)? {
        return Err(Error::InternalAssertion(format!("one-color coloring fails: {why}")));
    }
    let mut witness = Some(trivial);
    let mut last_sat = start - 1;
    let mut first_unsat = None;
    let mut scan = Vec::new();
    for n in start..=max_n {
        let v = decide_arrowing(k, n, &rt, &bt, budget, options)?;
        scan.push(ScanStep {
            n_vertices: n,
            status: v.status,
            stats: v.stats,
        });
        match v.status {
            Status::Sat => {
                last_sat = n;
                witness = v.witness;
            }
            Status::Unsat => {
                first_unsat = Some(n);
                break;
            }
            Status::Unknown => {}
        }
    }
    let claim = match first_unsat {
        Some(u) if u == last_sat + 1 => RamseyClaim::exact(
            k,
            red,
            blue,
            u,
            Provenance::SearchVerified,
            vec![
                format!("coloring of K^{k}_{last_sat} avoiding both targets (verified)"),
                format!("exhaustive search: every coloring of K^{k}_{u} contains one"),
            ],
        ),
        _ => RamseyClaim {
            k,
            red,
            blue,
            pair: pair_name(red, blue),
            value: None,
            lower: last_sat + 1,
            upper: first_unsat,
            provenance: Provenance::BoundsOnly,
            chain: vec![format!(
                "witness on {last_sat} vertices; {}",
                match first_unsat {
                    Some(u) => format!("UNSAT at {u}, undecided in between"),
                    None => format!("no UNSAT verdict up to {max_n}"),
                }
            )],
        },
    };
    Ok(RamseyComputation { claim, witness, scan })
}
