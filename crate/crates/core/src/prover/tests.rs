use super::*;
use crate::coloring::{lower_bound_witness, split_coloring, PairKind, SplitSpec};
use crate::constructive::{instances, join_red_cycles, find_disjoint_pairs};
use crate::template::{cycle_template, path_template, Kind, TargetSpec, Vertex};

fn cyc(k: usize, n: usize) -> LooseTemplate {
    cycle_template(k, n).unwrap()
}

fn path(k: usize, n: usize) -> LooseTemplate {
    path_template(k, n).unwrap()
}

fn decide(k: usize, n: u32, r: &LooseTemplate, b: &LooseTemplate) -> ArrowingVerdict {
    decide_arrowing(k, n, r, b, Budget::default(), ArrowOptions::default()).unwrap()
}

/// Edge-set masks of all copies, found by trying every injective labeling.
fn brute_copies(n_vertices: u32, t: &LooseTemplate) -> Vec<u64> {
    let v = t.vertex_count();
    let mut out = std::collections::BTreeSet::new();
    let mut assign: Vec<Vertex> = Vec::new();
    fn go(n: u32, v: usize, t: &LooseTemplate, assign: &mut Vec<Vertex>, out: &mut std::collections::BTreeSet<u64>) {
        if assign.len() == v {
            let mut mask = 0u64;
            for e in t.edges() {
                let mut s: Vec<Vertex> = e.vertices().iter().map(|&j| assign[j as usize - 1]).collect();
                s.sort_unstable();
                mask |= 1 << crate::combinat::rank_sorted(&s);
            }
            out.insert(mask);
            return;
        }
        for h in 1..=n {
            if !assign.contains(&h) {
                assign.push(h);
                go(n, v, t, assign, out);
                assign.pop();
            }
        }
    }
    if v <= n_vertices as usize {
        go(n_vertices, v, t, &mut assign, &mut out);
    }
    out.into_iter().collect()
}

/// Whether some coloring of `K^3_N` avoids both targets, by enumerating all of them.
fn brute_sat(n_vertices: u32, r: &LooseTemplate, b: &LooseTemplate) -> bool {
    let e = crate::combinat::edge_count(n_vertices, 3);
    let rc = brute_copies(n_vertices, r);
    let bc = brute_copies(n_vertices, b);
    (0u64..1 << e).any(|red| {
        let blue = !red & ((1u64 << e) - 1);
        !rc.iter().any(|&m| red & m == m) && !bc.iter().any(|&m| blue & m == m)
    })
}

#[test]
fn spec_verdicts_for_triangles() {
    let c3 = cyc(3, 3);
    let v = decide(3, 6, &c3, &c3);
    assert_eq!(v.status, Status::Sat);
    assert_eq!(v.witness.unwrap(), split_coloring(3, 6, SplitSpec { a: 5 }).unwrap());
    assert_eq!(decide(3, 7, &c3, &c3).status, Status::Unsat);
    let v = decide(3, 5, &c3, &c3);
    assert_eq!(v.status, Status::Sat);
    assert_eq!(v.stats.clauses, 0);
}

#[test]
fn matches_brute_force_on_small_hosts() {
    let targets = [path(3, 2), path(3, 3), cyc(3, 3)];
    for n in [5u32, 6] {
        for r in &targets {
            for b in &targets {
                let want = brute_sat(n, r, b);
                let got = decide(3, n, r, b);
                assert_eq!(got.status == Status::Sat, want, "N = {n}, {r} vs {b}");
                assert_ne!(got.status, Status::Unknown);
            }
        }
    }
}

#[test]
fn copies_match_brute_force() {
    for n in 3..=7u32 {
        for t in [path(3, 1), path(3, 2), path(3, 3), cyc(3, 3)] {
            let ours = copies(n, &t).unwrap();
            assert_eq!(ours.len(), brute_copies(n, &t).len(), "{t} in K_{n}");
        }
    }
}

#[test]
fn verdicts_survive_other_orders_and_pruning() {
    let cases = [
        (6u32, cyc(3, 3), cyc(3, 3)),
        (7, cyc(3, 3), cyc(3, 3)),
        (6, path(3, 2), path(3, 2)),
        (7, path(3, 2), cyc(3, 3)),
        (6, path(3, 2), cyc(3, 3)),
    ];
    for (n, r, b) in cases {
        let base = decide(3, n, &r, &b).status;
        for symmetry in [false, true] {
            for order in [BranchOrder::LowestRank, BranchOrder::HighestRank] {
                for first in [Color::Red, Color::Blue] {
                    for threads in [1, 3] {
                        let o = ArrowOptions {
                            symmetry,
                            order,
                            first,
                            threads,
                            split_depth: 4,
                        };
                        let v = decide_arrowing(3, n, &r, &b, Budget::default(), o).unwrap();
                        assert_eq!(v.status, base, "N = {n} {r} {b} {o:?}");
                        if let Some(w) = v.witness {
                            assert!(avoids(&w, &r, &b).unwrap().is_ok());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn symmetry_pruning_cuts_nodes() {
    let c3 = cyc(3, 3);
    let plain = decide(3, 7, &c3, &c3);
    let o = ArrowOptions {
        symmetry: true,
        ..Default::default()
    };
    let pruned = decide_arrowing(3, 7, &c3, &c3, Budget::default(), o).unwrap();
    assert_eq!(pruned.status, Status::Unsat);
    assert!(pruned.stats.symmetry_cuts > 0);
    assert!(pruned.stats.nodes <= plain.stats.nodes);
}

#[test]
fn single_thread_witness_is_deterministic() {
    let (r, b) = (path(3, 2), cyc(3, 3));
    let a = decide(3, 6, &r, &b);
    let c = decide(3, 6, &r, &b);
    assert_eq!(a.witness, c.witness);
    assert_eq!(a.stats.nodes, c.stats.nodes);
}

#[test]
fn budget_gives_unknown() {
    let c3 = cyc(3, 3);
    let b = Budget {
        max_nodes: Some(3),
        max_secs: None,
    };
    let v = decide_arrowing(3, 7, &c3, &c3, b, ArrowOptions::default()).unwrap();
    assert_eq!(v.status, Status::Unknown);
    assert!(v.witness.is_none());
    let b = Budget {
        max_nodes: None,
        max_secs: Some(0.0),
    };
    let o = ArrowOptions {
        threads: 2,
        split_depth: 2,
        ..Default::default()
    };
    assert_eq!(decide_arrowing(3, 7, &c3, &c3, b, o).unwrap().status, Status::Unknown);
}

#[test]
fn rejects_bad_parameters() {
    let c3 = cyc(3, 3);
    let c4 = cyc(4, 3);
    assert!(matches!(
        decide_arrowing(3, 7, &c3, &c4, Budget::default(), ArrowOptions::default()),
        Err(Error::IncompatibleUniformity { .. })
    ));
    let o = ArrowOptions {
        threads: 0,
        ..Default::default()
    };
    assert!(decide_arrowing(3, 7, &c3, &c3, Budget::default(), o).is_err());
    assert!(decide_arrowing(3, 65, &c3, &c3, Budget::default(), ArrowOptions::default()).is_err());
}

#[test]
fn dimacs_headers_and_clauses() {
    let c3 = cyc(3, 3);
    let d = export_dimacs(3, 6, &c3, &c3).unwrap();
    assert_eq!(d.header(), "p cnf 20 240");
    assert!(d.text.lines().any(|l| l == "p cnf 20 240"));
    assert_eq!(export_dimacs(3, 7, &c3, &c3).unwrap().header(), "p cnf 35 1680");
    let p1 = path(3, 1);
    let d = export_dimacs(3, 3, &p1, &p1).unwrap();
    let body: Vec<&str> = d.text.lines().filter(|l| !l.starts_with("c ")).collect();
    assert_eq!(body, ["p cnf 1 2", "-1 0", "1 0"]);
    assert_eq!(d.sidecar["edges"][0], serde_json::json!([1, 2, 3]));
    assert_eq!(d.sidecar["varmap_sha256"], d.varmap_sha256);
    assert!(d.text.contains(&format!("c varmap-sha256 {}", d.varmap_sha256)));
}

#[test]
fn dimacs_clause_count_matches_copy_counts() {
    for n in 5..=8u32 {
        let (r, b) = (path(3, 3), cyc(3, 3));
        let d = export_dimacs(3, n, &r, &b).unwrap();
        let want = crate::embed::count_copies(n, 3, &r).unwrap() + crate::embed::count_copies(n, 3, &b).unwrap();
        assert_eq!(d.clauses, want);
        assert_eq!(d.text.lines().filter(|l| !l.starts_with('c') && !l.starts_with('p')).count(), want);
    }
}

/// Tiny complete solver over the exported text, standing in for an external one.
fn solve_cnf(text: &str) -> Option<Vec<i64>> {
    let mut n = 0usize;
    let mut clauses: Vec<Vec<i64>> = Vec::new();
    for line in text.lines() {
        if let Some(h) = line.strip_prefix("p cnf ") {
            n = h.split_whitespace().next().unwrap().parse().unwrap();
        } else if !line.starts_with('c') && !line.is_empty() {
            let lits: Vec<i64> = line.split_whitespace().map(|t| t.parse().unwrap()).collect();
            assert_eq!(lits.last(), Some(&0));
            clauses.push(lits[..lits.len() - 1].to_vec());
        }
    }
    let sat = |m: u64| {
        clauses.iter().all(|c| {
            c.iter().any(|&l| {
                let bit = m >> (l.unsigned_abs() - 1) & 1 == 1;
                (l > 0) == bit
            })
        })
    };
    (0u64..1 << n)
        .find(|&m| sat(m))
        .map(|m| (1..=n as i64).map(|v| if m >> (v - 1) & 1 == 1 { v } else { -v }).collect())
}

#[test]
fn exported_cnf_agrees_with_engine() {
    let targets = [path(3, 2), cyc(3, 3)];
    for n in [5u32, 6] {
        for r in &targets {
            for b in &targets {
                let d = export_dimacs(3, n, r, b).unwrap();
                let ext = solve_cnf(&d.text);
                let v = decide(3, n, r, b);
                assert_eq!(ext.is_some(), v.status == Status::Sat);
                if let Some(m) = ext {
                    let c = model_to_coloring(3, n, &m).unwrap();
                    assert!(avoids(&c, r, b).unwrap().is_ok());
                }
            }
        }
    }
}

#[test]
fn solver_output_parsing() {
    let a = parse_solver_output("c hi\ns SATISFIABLE\nv 1 -2 3\nv -4 0\n").unwrap();
    assert_eq!(a, SolverAnswer::Satisfiable { model: vec![1, -2, 3, -4] });
    assert_eq!(parse_solver_output("s UNSATISFIABLE\n").unwrap(), SolverAnswer::Unsatisfiable);
    assert_eq!(parse_solver_output("nothing").unwrap(), SolverAnswer::Unknown);
    assert!(parse_solver_output("s MAYBE").is_err());
    let c = model_to_coloring(3, 4, &[1, -2, 4]).unwrap();
    assert_eq!(c.red_count(), 2);
    assert!(model_to_coloring(3, 4, &[5]).is_err());
}

#[test]
fn cache_directory_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let t = cyc(3, 3);
    let first = copies::load_or_enumerate(Some(dir.path()), 6, &t).unwrap();
    assert_eq!(first.len(), 120);
    let file = copies::cache_file(dir.path(), 6, &t);
    assert!(file.exists());
    assert_eq!(copies::load_or_enumerate(Some(dir.path()), 6, &t).unwrap(), first);
    std::fs::write(&file, "{\"k\":3,\"n_vertices\":6,\"template\":\"cycle:3\",\"copies\":[[0,1,99]]}").unwrap();
    assert_eq!(copies::load_or_enumerate(Some(dir.path()), 6, &t).unwrap(), first);
}

#[test]
fn compute_small_values() {
    let c3 = TargetSpec { kind: Kind::Cycle, n: 3 };
    let r = compute_ramsey(3, c3, c3, Budget::default(), ArrowOptions::default(), None).unwrap();
    assert_eq!(r.claim.value, Some(7));
    assert_eq!(r.claim.provenance, Provenance::SearchVerified);
    let w = r.witness.unwrap();
    assert_eq!(w.n_vertices(), 6);
    assert!(avoids(&w, &cyc(3, 3), &cyc(3, 3)).unwrap().is_ok());
    assert_eq!(r.scan.last().unwrap().status, Status::Unsat);

    let p1 = TargetSpec { kind: Kind::Path, n: 1 };
    let r = compute_ramsey(3, p1, p1, Budget::default(), ArrowOptions::default(), None).unwrap();
    assert_eq!(r.claim.value, Some(3));
    assert_eq!(r.witness.unwrap().n_vertices(), 2);

    let p2 = TargetSpec { kind: Kind::Path, n: 2 };
    let r = compute_ramsey(3, p2, p2, Budget::default(), ArrowOptions::default(), None).unwrap();
    assert_eq!(r.claim.value, Some(5));
}

#[test]
fn compute_reports_bounds_when_budget_runs_out() {
    let c3 = TargetSpec { kind: Kind::Cycle, n: 3 };
    let b = Budget {
        max_nodes: Some(2),
        max_secs: None,
    };
    let r = compute_ramsey(3, c3, c3, b, ArrowOptions::default(), Some(8)).unwrap();
    assert_eq!(r.claim.value, None);
    assert_eq!(r.claim.provenance, Provenance::BoundsOnly);
    assert_eq!(r.claim.lower, 6);
    assert_eq!(r.claim.upper, None);
}

#[test]
fn derive_table_examples() {
    let base = |n, m, value| BaseValue {
        n,
        m,
        value,
        provenance: Provenance::SearchVerified,
        citation: "test".into(),
    };
    let t = derive_table(3, &[base(3, 3, 7)], 10).unwrap();
    let get = |t: &[RamseyClaim], r: &str, b: &str| {
        t.iter()
            .find(|c| c.red.to_string() == r && c.blue.to_string() == b)
            .and_then(|c| c.value)
    };
    assert_eq!(get(&t, "path:3", "cycle:3"), Some(8));
    assert_eq!(get(&t, "path:3", "path:2"), Some(7));
    assert_eq!(get(&t, "path:3", "path:3"), Some(8));
    assert!(t.iter().filter(|c| c.pair != "CC").all(|c| c.provenance == Provenance::TheoremDerived));
    assert!(t.iter().all(|c| c.chain.iter().any(|s| s.contains("R(C3, C3) = 7"))));

    let t = derive_table(4, &[base(3, 3, 10)], 10).unwrap();
    assert_eq!(get(&t, "path:3", "cycle:3"), Some(11));
    assert!(matches!(derive_table(3, &[base(3, 3, 6)], 10), Err(Error::InconsistentBase(_))));
    assert!(derive_table(3, &[base(2, 3, 6)], 10).is_err());
}

#[test]
fn derive_table_extends_cycle_rows() {
    let t = derive_table(4, &known_cycle_values(4, 6).unwrap(), 9).unwrap();
    let ext: Vec<_> = t.iter().filter(|c| c.provenance == Provenance::TheoremExtended).collect();
    assert_eq!(ext.len(), 3);
    for c in ext {
        assert_eq!(c.value, Some(cycle_value(4, c.red.n, 3)));
    }
    // [3, 6] not covered: no extension
    let t = derive_table(4, &known_cycle_values(4, 5).unwrap(), 9).unwrap();
    assert!(t.iter().all(|c| c.provenance != Provenance::TheoremExtended));
}

#[test]
fn derived_values_obey_the_single_formula() {
    for k in 3..=10 {
        let t = derive_table(k, &known_cycle_values(k, 6).unwrap(), 6).unwrap();
        for c in &t {
            let (n, m) = (c.red.n, c.blue.n);
            let want = match c.pair.as_str() {
                "CC" => cycle_value(k, n, m),
                _ => ((k - 1) * n + (m + 1) / 2) as u32,
            };
            assert_eq!(c.value, Some(want), "{}", c.label());
        }
    }
}

#[test]
fn witness_certificates() {
    let w = lower_bound_witness(3, 3, 3, PairKind::CC).unwrap();
    let cert = Certificate::witness(&w.coloring, &w.red_target, &w.blue_target);
    let doc = cert.to_json().to_string();
    let ok = verify_certificate(&doc).unwrap();
    assert!(ok.accepted, "{ok:?}");
    assert_eq!(ok.kind, "witness");
    for rank in 0..w.coloring.edge_count() {
        let mut bad = w.coloring.clone();
        bad.flip_rank(rank);
        let doc = Certificate::witness(&bad, &w.red_target, &w.blue_target).to_json().to_string();
        let r = verify_certificate(&doc).unwrap();
        assert!(!r.accepted);
        let reason = r.reason.unwrap();
        assert!(reason.contains("cycle:3 found"), "{reason}");
    }
}

#[test]
fn embedding_certificates() {
    let c = TwoColoring::uniform(3, 6, Color::Red).unwrap();
    let e = instances::planted(&cyc(3, 3), 0, Color::Red);
    let doc = Certificate::embedding(&c, &e, Color::Red).to_json().to_string();
    assert!(verify_certificate(&doc).unwrap().accepted);
    let doc = Certificate::embedding(&c, &e, Color::Blue).to_json().to_string();
    let r = verify_certificate(&doc).unwrap();
    assert!(r.reason.unwrap().starts_with("edge-color-mismatch"));
}

#[test]
fn join_trace_certificates() {
    let (c, c1, c2) = instances::two_red_cycles(4, 3, 3, 0.5, 7).unwrap();
    let trace = join_red_cycles(&c, &c1, &c2, 3).unwrap();
    let cert = Certificate::new(&c, Payload::JoinTrace { trace: trace.clone() }, None);
    assert!(verify_certificate(&cert.to_json().to_string()).unwrap().accepted);
    let mut bad = trace;
    bad.steps[0].g.color = bad.steps[0].g.color.other();
    let cert = Certificate::new(&c, Payload::JoinTrace { trace: bad }, None);
    let r = verify_certificate(&cert.to_json().to_string()).unwrap();
    assert!(!r.accepted);
    assert!(r.reason.unwrap().starts_with("edge-color-mismatch"));
}

#[test]
fn pair_certificates() {
    let c = instances::split_with_flips(3, 9, 5, 4, 3).unwrap();
    let (p, q) = find_disjoint_pairs(&c).unwrap();
    let cert = Certificate::new(
        &c,
        Payload::Pairs {
            pairs: vec![p.clone(), q],
            disjoint: true,
        },
        None,
    );
    assert!(verify_certificate(&cert.to_json().to_string()).unwrap().accepted);
    let cert = Certificate::new(
        &c,
        Payload::Pairs {
            pairs: vec![p.clone(), p],
            disjoint: true,
        },
        None,
    );
    assert!(!verify_certificate(&cert.to_json().to_string()).unwrap().accepted);
}

#[test]
fn malformed_certificates() {
    assert!(matches!(verify_certificate("{}"), Err(Error::MalformedCertificate(_))));
    assert!(matches!(verify_certificate("not json"), Err(Error::MalformedCertificate(_))));
    let w = lower_bound_witness(3, 3, 3, PairKind::CC).unwrap();
    let mut v = Certificate::witness(&w.coloring, &w.red_target, &w.blue_target).to_json();
    v["format"] = "other".into();
    assert!(verify_certificate(&v.to_string()).is_err());
    let mut v = Certificate::witness(&w.coloring, &w.red_target, &w.blue_target).to_json();
    v["payload"]["red_target"]["k"] = 4.into();
    assert!(matches!(verify_certificate(&v.to_string()), Err(Error::MalformedCertificate(_))));
}
