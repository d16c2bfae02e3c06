use super::instances::*;
use super::*;
use crate::coloring::{Color, TwoColoring};
use crate::embed::{verify_edge_sequence, verify_embedding, ColorClaim};
use crate::error::Error;
use crate::template::{cycle_template, path_template, Edge, Kind};

fn e(vs: &[u32]) -> Edge {
    Edge::from_slice(vs).unwrap()
}

fn edge_set(x: &Embedding) -> Vec<Edge> {
    let mut v = x.edges();
    v.sort();
    v
}

fn sorted(mut v: Vec<Edge>) -> Vec<Edge> {
    v.sort();
    v
}

/// Red path {1,2,3}{3,4,5}, W = {6,7,8}; the four cross edges through
/// each y are red and everything else off the path is blue.
fn final_case() -> (TwoColoring, Embedding, Vec<u32>) {
    let w = vec![6, 7, 8];
    let c = TwoColoring::from_fn(3, 8, |s| {
        let on = |a: u32, b: u32| s.contains(&a) && s.contains(&b);
        let y = s.iter().any(|v| w.contains(v));
        let red = s == [1, 2, 3] || s == [3, 4, 5] || (y && (on(1, 3) || on(2, 3) || on(1, 4) || on(2, 4)));
        if red {
            Color::Red
        } else {
            Color::Blue
        }
    })
    .unwrap();
    let p = planted(&path_template(3, 2).unwrap(), 0, Color::Red);
    (c, p, w)
}

#[test]
fn final_case_configuration() {
    let (c, p, w) = final_case();
    let rep = find_good_configuration(&c, &p, &w, 1, 1).unwrap();
    assert_eq!(rep.case, ConfigurationCase::AllCrossRed);
    let g = &rep.configuration;
    assert_eq!((g.a1, g.a2, g.a3, g.avoided), (1, 2, 5, 4));
    assert_ne!(g.x, g.y);
    assert_eq!(g.edges(), [e(&[1, g.x, 2]), e(&[2, 5, g.y])]);
    assert_eq!(rep.excluded, None);
    validate_configuration(&c, &p, &w, 1, g).unwrap();
}

#[test]
fn configuration_rejects_bad_hypotheses() {
    let (c, p, _) = final_case();
    assert!(matches!(
        find_good_configuration(&c, &p, &[6, 7], 1, 1),
        Err(Error::HypothesisViolation(_))
    ));
    assert!(matches!(
        find_good_configuration(&c, &p, &[6, 7, 8], 1, 2),
        Err(Error::HypothesisViolation(_))
    ));
    assert!(matches!(
        find_good_configuration(&c, &p, &[6, 7, 8], 2, 2),
        Err(Error::HypothesisViolation(_))
    ));
    // Making {1,6,2}{2,7,5}... red is not enough; a red {1,2,6} makes the path extendable.
    let mut c2 = c.clone();
    c2.set_color(&e(&[1, 2, 6]), Color::Red).unwrap();
    c2.set_color(&e(&[2, 3, 7]), Color::Red).unwrap();
    c2.set_color(&e(&[1, 6, 7]), Color::Red).unwrap();
    let q = crate::embed::MaximalityQuery { path: p.clone(), w: vec![6, 7, 8] };
    if !crate::embed::is_maximal_wrt(&c2, &q).unwrap() {
        assert!(matches!(
            find_good_configuration(&c2, &p, &[6, 7, 8], 1, 1),
            Err(Error::HypothesisViolation(_))
        ));
    }
}

#[test]
fn validator_catches_tampering() {
    let (c, p, w) = final_case();
    let g = find_good_configuration(&c, &p, &w, 1, 1).unwrap().configuration;
    let mut bad = g.clone();
    bad.avoided = 5;
    assert!(validate_configuration(&c, &p, &w, 1, &bad).is_err());
    let mut bad = g.clone();
    bad.y = 1;
    assert!(validate_configuration(&c, &p, &w, 1, &bad).is_err());
    let mut bad = g;
    bad.a1 = 3;
    assert!(validate_configuration(&c, &p, &w, 1, &bad).is_err());
}

#[test]
fn random_configurations_validate() {
    let mut checked = 0;
    for seed in 0..200u64 {
        let n = 2 + (seed % 4) as usize;
        let Some(inst) = maximal_path_instance(n, 3, 0.08, seed, 50).unwrap() else {
            continue;
        };
        for i in 1..n {
            let a_set: Vec<u32> = if i == 1 {
                vec![inst.path.assignment[0]]
            } else {
                vec![inst.path.assignment[2 * i - 3], inst.path.assignment[2 * i - 2]]
            };
            for u in a_set {
                let rep = find_good_configuration(&inst.coloring, &inst.path, &inst.w, i, u).unwrap();
                validate_configuration(&inst.coloring, &inst.path, &inst.w, u, &rep.configuration).unwrap();
                checked += 1;
            }
        }
    }
    assert!(checked >= 200, "only {checked} configurations checked");
}

#[test]
fn absorb_two_edges() {
    let (c, p, w) = final_case();
    let res = absorb_blue_path(&c, &p, &w).unwrap();
    assert_eq!(res.len(), 2);
    assert_eq!(res.w_used.len(), 2);
    assert_eq!(res.r, 0);
    validate_absorption(&c, &p, &w, &res).unwrap();
    assert!(matches!(absorb_blue_path(&c, &p, &[6, 7]), Err(Error::HypothesisViolation(_))));
}

#[test]
fn random_absorptions_validate() {
    let mut checked = 0;
    for seed in 0..60u64 {
        let n = if seed % 2 == 0 { 4 } else { 6 };
        let ws = 4 + (seed / 2 % 2) as usize;
        let Some(inst) = maximal_path_instance(n, ws, 0.04, seed, 80).unwrap() else {
            continue;
        };
        let res = absorb_blue_path(&inst.coloring, &inst.path, &inst.w).unwrap();
        validate_absorption(&inst.coloring, &inst.path, &inst.w, &res).unwrap();
        assert_eq!(res.len(), n - res.r);
        assert_eq!(res.len(), 2 * (res.w_used.len() - 1));
        checked += 1;
    }
    assert!(checked >= 20, "only {checked} instances");
}

/// Red C_{n-1} on 1..2(n-1), everything else blue.
fn lonely_red_cycle(n: usize, m: usize) -> (TwoColoring, Embedding) {
    let host = (2 * n + (m - 1) / 2) as u32;
    let mut c = TwoColoring::uniform(3, host, Color::Blue).unwrap();
    let cy = planted(&cycle_template(3, n - 1).unwrap(), 0, Color::Red);
    paint(&mut c, &cy, Color::Red);
    (c, cy)
}

#[test]
fn case2_cycles_match_formulas() {
    let (c, cy) = lonely_red_cycle(5, 4);
    let xs = [9, 10, 11];
    let got = case2_blue_cycle(&c, &cy, &xs, 4).unwrap();
    assert_eq!(
        edge_set(&got),
        sorted(vec![e(&[9, 2, 3]), e(&[3, 4, 10]), e(&[10, 5, 6]), e(&[9, 6, 7])])
    );
    let got = case2_blue_cycle(&c, &cy, &xs, 3).unwrap();
    assert_eq!(edge_set(&got), sorted(vec![e(&[9, 2, 3]), e(&[3, 4, 10]), e(&[10, 1, 2])]));
    let got = case2_blue_cycle(&c, &cy, &xs, 5).unwrap();
    assert_eq!(
        edge_set(&got),
        sorted(vec![e(&[9, 2, 3]), e(&[3, 4, 10]), e(&[10, 5, 6]), e(&[6, 7, 11]), e(&[11, 1, 2])])
    );
    verify_embedding(&c, &got).unwrap();
}

#[test]
fn case2_rejects_red_cross_edge() {
    let (mut c, cy) = lonely_red_cycle(5, 4);
    c.set_color(&e(&[3, 4, 11]), Color::Red).unwrap();
    match case2_blue_cycle(&c, &cy, &[9, 10, 11], 4) {
        Err(Error::HypothesisViolation(s)) => assert!(s.contains("{3,4,11}"), "{s}"),
        other => panic!("{other:?}"),
    }
    assert!(matches!(case2_blue_cycle(&c, &cy, &[9, 10, 11], 6), Err(Error::InvalidParameter(_))));
}

#[test]
fn shorter_cycle_case2_dispatch() {
    let (c, cy) = lonely_red_cycle(5, 3);
    let out = blue_cycle_from_red_shorter_cycle(&c, &cy, 5, 3, None).unwrap();
    assert_eq!(out.case, ShorterCycleCase::AllCrossBlue);
    assert_eq!(out.certification, Certification::LemmaCertified);
    assert_eq!(out.cycle, case2_blue_cycle(&c, &cy, &[9, 10, 11], 3).unwrap());
    let (c, cy) = lonely_red_cycle(4, 3);
    assert!(matches!(
        blue_cycle_from_red_shorter_cycle(&c, &cy, 4, 3, None),
        Err(Error::HypothesisViolation(_))
    ));
}

#[test]
fn shorter_cycle_random_instances() {
    let mut cases = [0usize; 3];
    let mut done = 0;
    for seed in 0..100u64 {
        let (c, cy) = shorter_cycle_instance(5, 3, 10 + (seed % 40) as usize, seed).unwrap();
        let out = blue_cycle_from_red_shorter_cycle(&c, &cy, 5, 3, None).unwrap();
        assert_eq!(out.cycle.template, cycle_template(3, 3).unwrap());
        assert_eq!(out.cycle.claimed_color, ColorClaim::Blue);
        verify_embedding(&c, &out.cycle).unwrap();
        cases[out.case as usize] += 1;
        done += 1;
    }
    assert_eq!(done, 100);
    assert!(cases[0] > 0 && cases[1] > 0, "{cases:?}");
}

#[test]
fn shorter_cycle_longer_targets() {
    for (n, m) in [(5, 4), (5, 5), (6, 4)] {
        for seed in 0..6u64 {
            let (c, cy) = shorter_cycle_instance(n, m, 5 + 8 * seed as usize, seed).unwrap();
            let out = blue_cycle_from_red_shorter_cycle(&c, &cy, n, m, None).unwrap();
            assert_eq!(out.cycle.template.n, m);
            verify_embedding(&c, &out.cycle).unwrap();
        }
    }
}

fn check_trace(c: &TwoColoring, t: &JoinTrace, n: usize, m: usize, l: usize) {
    assert!(t.steps.len() <= l);
    for s in &t.steps {
        assert_eq!(c.color_sorted(s.g.edge.vertices()), s.g.color);
        assert_eq!(c.color_sorted(s.h.edge.vertices()), s.h.color);
    }
    let cy = t.outcome.cycle();
    verify_embedding(c, cy).unwrap();
    match t.outcome.color() {
        Color::Red => assert_eq!(cy.template.n, n + m),
        Color::Blue => assert_eq!(cy.template.n, l),
    }
}

#[test]
fn join_all_red() {
    let c = TwoColoring::uniform(4, 18, Color::Red).unwrap();
    let c1 = planted(&cycle_template(4, 3).unwrap(), 0, Color::Red);
    let c2 = planted(&cycle_template(4, 3).unwrap(), 9, Color::Red);
    let t = join_red_cycles(&c, &c1, &c2, 3).unwrap();
    assert_eq!(t.outcome.color(), Color::Red);
    assert_eq!(t.steps.len(), 1);
    check_trace(&c, &t, 3, 3, 3);
}

#[test]
fn join_all_blue_outside() {
    let mut c = TwoColoring::uniform(4, 18, Color::Blue).unwrap();
    let c1 = planted(&cycle_template(4, 3).unwrap(), 0, Color::Red);
    let c2 = planted(&cycle_template(4, 3).unwrap(), 9, Color::Red);
    paint(&mut c, &c1, Color::Red);
    paint(&mut c, &c2, Color::Red);
    let t = join_red_cycles(&c, &c1, &c2, 3).unwrap();
    assert_eq!(t.outcome.color(), Color::Blue);
    check_trace(&c, &t, 3, 3, 3);
}

#[test]
fn join_random_traces_verify() {
    let mut colors = [0usize; 2];
    for seed in 0..300u64 {
        let p = [0.3, 0.5, 0.7, 0.9][(seed % 4) as usize];
        let (c, c1, c2) = two_red_cycles(4, 3, 3, p, seed).unwrap();
        let t = join_red_cycles(&c, &c1, &c2, 3).unwrap();
        check_trace(&c, &t, 3, 3, 3);
        colors[t.outcome.color() as usize] += 1;
    }
    assert!(colors[0] > 0 && colors[1] > 0, "{colors:?}");
}

#[test]
fn join_longer_cycles_and_targets() {
    for (k, n, m) in [(4, 4, 4), (4, 5, 4), (5, 4, 3), (4, 6, 5)] {
        for l in 3..=m {
            for seed in 0..40u64 {
                let p = [0.2, 0.6, 0.85, 0.97][(seed % 4) as usize];
                let (c, c1, c2) = two_red_cycles(k, n, m, p, seed).unwrap();
                let t = join_red_cycles(&c, &c1, &c2, l).unwrap();
                check_trace(&c, &t, n, m, l);
            }
        }
    }
}

#[test]
fn join_rejects_bad_inputs() {
    let c = TwoColoring::uniform(4, 18, Color::Red).unwrap();
    let c1 = planted(&cycle_template(4, 3).unwrap(), 0, Color::Red);
    let c2 = planted(&cycle_template(4, 3).unwrap(), 6, Color::Red);
    assert!(matches!(join_red_cycles(&c, &c1, &c2, 3), Err(Error::HypothesisViolation(_))));
    let c2 = planted(&cycle_template(4, 3).unwrap(), 9, Color::Red);
    assert!(matches!(join_red_cycles(&c, &c1, &c2, 4), Err(Error::HypothesisViolation(_))));
    let c3 = TwoColoring::uniform(3, 12, Color::Red).unwrap();
    let d1 = planted(&cycle_template(3, 3).unwrap(), 0, Color::Red);
    let d2 = planted(&cycle_template(3, 3).unwrap(), 6, Color::Red);
    assert!(matches!(join_red_cycles(&c3, &d1, &d2, 3), Err(Error::HypothesisViolation(_))));
}

#[test]
fn single_blue_edge_pair() {
    for k in 3..=5usize {
        let n = k as u32 + 3;
        let f = e(&(2..=k as u32 + 1).collect::<Vec<_>>());
        let c = TwoColoring::from_fn(k, n, |s| if s == f.vertices() { Color::Blue } else { Color::Red }).unwrap();
        let p = adjacent_bichromatic_pair(&c).unwrap().pair;
        assert_eq!(p.blue, f);
        assert_eq!(p.red.intersection_size(&f), k - 1);
        validate_pair(&c, &p).unwrap();
    }
    let c = TwoColoring::uniform(3, 6, Color::Red).unwrap();
    assert!(matches!(adjacent_bichromatic_pair(&c), Err(Error::MonochromaticColoring)));
    let c = TwoColoring::uniform(3, 3, Color::Red).unwrap();
    assert!(matches!(adjacent_bichromatic_pair(&c), Err(Error::HostTooSmall { .. })));
}

#[test]
fn random_pairs_improve_monotonically() {
    let mut done = 0;
    for seed in 0..500u64 {
        let k = 3 + (seed % 3) as usize;
        let n = (k + 2 + (seed / 3 % 5) as usize) as u32;
        let c = random_coloring(k, n, [0.05, 0.5, 0.95][(seed % 7 % 3) as usize], seed).unwrap();
        match adjacent_bichromatic_pair(&c) {
            Ok(s) => {
                validate_pair(&c, &s.pair).unwrap();
                assert!(s.iterations <= k);
                assert!(s.intersections.windows(2).all(|w| w[0] < w[1]));
                done += 1;
            }
            Err(Error::MonochromaticColoring) => {}
            Err(other) => panic!("{other}"),
        }
    }
    assert!(done > 400);
}

/// e1 = {1,2,3} red, e2 = {2,3,4} blue, every edge inside W + {1} red.
fn disjoint_scenario() -> TwoColoring {
    TwoColoring::from_fn(3, 11, |s| {
        let inside = s.iter().all(|&v| v == 1 || v >= 5);
        if inside || s == [1, 2, 3] || s == [1, 2, 4] || s == [1, 3, 4] {
            Color::Red
        } else {
            Color::Blue
        }
    })
    .unwrap()
}

#[test]
fn disjoint_pairs_follow_case_analysis() {
    let c = disjoint_scenario();
    let (p, q) = find_disjoint_pairs(&c).unwrap();
    assert_eq!(p, BichromaticPair { red: e(&[1, 5, 6]), blue: e(&[2, 5, 6]) });
    assert_eq!(q, BichromaticPair { red: e(&[7, 8, 9]), blue: e(&[3, 7, 8]) });
}

#[test]
fn disjoint_pairs_random() {
    for seed in 0..150u64 {
        let k = 3 + (seed % 2) as usize;
        let n = (5 * (k - 1) + 1) as u32;
        let c = split_with_flips(k, n, (4 * (k - 1)) as u32, 1 + (seed % 5) as usize, seed).unwrap();
        let (p, q) = find_disjoint_pairs(&c).unwrap();
        validate_pair(&c, &p).unwrap();
        validate_pair(&c, &q).unwrap();
        assert_eq!(p.union_mask() & q.union_mask(), 0);
    }
}

#[test]
fn disjoint_pairs_hypotheses_checked() {
    let c = disjoint_scenario();
    assert!(matches!(disjoint_bichromatic_pairs(&c, 5, None), Err(Error::HypothesisViolation(_))));
    assert!(matches!(disjoint_bichromatic_pairs(&c, 4, None), Err(Error::InvalidParameter(_))));
}

fn lone_blue_c4(k: usize, i: usize) -> (TwoColoring, Embedding) {
    let host = (i * (k - 1) + 1) as u32;
    let mut c = TwoColoring::uniform(k, host, Color::Red).unwrap();
    let c4 = planted(&cycle_template(k, 4).unwrap(), 0, Color::Blue);
    paint(&mut c, &c4, Color::Blue);
    (c, c4)
}

#[test]
fn lift_explicit_cycles() {
    for k in 3..=6 {
        for i in [5, 6] {
            let (c, c4) = lone_blue_c4(k, i);
            let red = lift_blue_c4(&c, &c4, i).unwrap();
            assert_eq!(red.template.n, i);
            verify_embedding(&c, &red).unwrap();
        }
    }
    let (c, c4) = lone_blue_c4(4, 5);
    let red = lift_blue_c4(&c, &c4, 5).unwrap();
    // (e_2 + v_12 - v_4) with e_2 = {4..7}
    assert!(red.edges().contains(&e(&[5, 6, 7, 12])));
    assert!(matches!(lift_blue_c4(&c, &c4, 7), Err(Error::InvalidParameter(_))));
}

#[test]
fn lift_reports_blue_edge() {
    let (mut c, c4) = lone_blue_c4(4, 5);
    let f = e(&[5, 6, 7, 12]);
    c.set_color(&f, Color::Blue).unwrap();
    match lift_blue_c4(&c, &c4, 5) {
        Err(Error::BlueEdgeEncountered(g)) => assert_eq!(g, f),
        other => panic!("{other:?}"),
    }
}

#[test]
fn edge_sequence_helper_agrees() {
    let (c, cy) = lonely_red_cycle(5, 3);
    verify_edge_sequence(&c, Kind::Cycle, &cy.edges(), Some(Color::Red)).unwrap();
}
