//! DPLL over edge colors with unit propagation on "not all one color"
//! clauses. No clause learning.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use crate::coloring::Color;
use crate::combinat::{rank_sorted, unrank};

const UNSET: u8 = 0;
const RED: u8 = 1;
const BLUE: u8 = 2;

fn code(c: Color) -> u8 {
    match c {
        Color::Red => RED,
        Color::Blue => BLUE,
    }
}

fn opposite(v: u8) -> u8 {
    RED + BLUE - v
}

/// Clause store shared read-only by all workers.
pub(crate) struct Formula {
    pub n_vars: usize,
    /// Variables of each clause.
    vars: Vec<Box<[u32]>>,
    /// The color the clause forbids on all of its variables.
    forbid: Vec<u8>,
    occurs: Vec<Vec<u32>>,
    /// Per adjacent transposition, the ranks it moves paired with their images, ascending.
    symmetry: Vec<Vec<(u32, u32)>>,
}

impl Formula {
    pub fn new(n_vars: usize, red: &[Vec<u32>], blue: &[Vec<u32>]) -> Formula {
        let mut vars = Vec::with_capacity(red.len() + blue.len());
        let mut forbid = Vec::with_capacity(red.len() + blue.len());
        let mut occurs = vec![Vec::new(); n_vars];
        for (list, f) in [(red, RED), (blue, BLUE)] {
            for c in list {
                let id = vars.len() as u32;
                for &v in c {
                    occurs[v as usize].push(id);
                }
                vars.push(c.clone().into_boxed_slice());
                forbid.push(f);
            }
        }
        Formula {
            n_vars,
            vars,
            forbid,
            occurs,
            symmetry: Vec::new(),
        }
    }

    pub fn with_symmetry(mut self, k: usize, n_vertices: u32) -> Formula {
        self.symmetry = (1..n_vertices)
            .map(|i| {
                (0..self.n_vars)
                    .filter_map(|r| {
                        let mut e = unrank(r, k);
                        let (a, b) = (e.contains(&i), e.contains(&(i + 1)));
                        if a == b {
                            return None;
                        }
                        for x in e.iter_mut() {
                            if *x == i {
                                *x = i + 1;
                            } else if *x == i + 1 {
                                *x = i;
                            }
                        }
                        e.sort_unstable();
                        Some((r as u32, rank_sorted(&e) as u32))
                    })
                    .collect()
            })
            .collect();
        self
    }

    pub fn clause_count(&self) -> usize {
        self.vars.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Sat,
    Unsat,
    Unknown,
}

/// Limits shared by every worker of one decision.
pub(crate) struct Limits {
    pub max_nodes: Option<u64>,
    pub deadline: Option<Instant>,
    pub nodes: AtomicU64,
    pub stop: AtomicBool,
    pub exhausted: AtomicBool,
}

impl Limits {
    fn over(&self, local_nodes: u64) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        let total = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let out = self.max_nodes.is_some_and(|m| total > m)
            || (local_nodes % 1024 == 1 && self.deadline.is_some_and(|d| Instant::now() >= d));
        if out {
            self.exhausted.store(true, Ordering::Relaxed);
            self.stop.store(true, Ordering::Relaxed);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Counters {
    pub nodes: u64,
    pub propagations: u64,
    pub conflicts: u64,
    pub symmetry_cuts: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Branching {
    pub lowest_first: bool,
    pub first: Color,
}

pub(crate) struct Search<'f> {
    f: &'f Formula,
    value: Vec<u8>,
    same: Vec<u32>,
    other: Vec<u32>,
    trail: Vec<u32>,
    head: usize,
    branching: Branching,
    pub counters: Counters,
}

impl<'f> Search<'f> {
    pub fn new(f: &'f Formula, branching: Branching) -> Search<'f> {
        Search {
            f,
            value: vec![UNSET; f.n_vars],
            same: vec![0; f.vars.len()],
            other: vec![0; f.vars.len()],
            trail: Vec::with_capacity(f.n_vars),
            head: 0,
            branching,
            counters: Counters::default(),
        }
    }

    pub fn model(&self) -> Vec<Color> {
        self.value
            .iter()
            .map(|&v| if v == RED { Color::Red } else { Color::Blue })
            .collect()
    }

    fn enqueue(&mut self, var: u32, v: u8) -> bool {
        match self.value[var as usize] {
            UNSET => {
                self.value[var as usize] = v;
                self.trail.push(var);
                true
            }
            cur => cur == v,
        }
    }

    /// Processes the trail; false on conflict.
    fn propagate(&mut self) -> bool {
        let mut ok = true;
        while self.head < self.trail.len() {
            let var = self.trail[self.head] as usize;
            self.head += 1;
            self.counters.propagations += 1;
            let v = self.value[var];
            for &cl in &self.f.occurs[var] {
                let cl = cl as usize;
                if self.f.forbid[cl] != v {
                    self.other[cl] += 1;
                    continue;
                }
                self.same[cl] += 1;
                if !ok || self.other[cl] > 0 {
                    continue;
                }
                let len = self.f.vars[cl].len() as u32;
                if self.same[cl] == len {
                    ok = false;
                } else if self.same[cl] + 1 == len {
                    let forbid = self.f.forbid[cl];
                    if let Some(&u) = self.f.vars[cl].iter().find(|&&u| self.value[u as usize] != forbid) {
                        if self.value[u as usize] == UNSET {
                            self.value[u as usize] = opposite(forbid);
                            self.trail.push(u);
                        }
                    }
                }
            }
            if !ok {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let var = self.trail.pop().expect("trail entry") as usize;
            if self.trail.len() < self.head {
                let v = self.value[var];
                for &cl in &self.f.occurs[var] {
                    let cl = cl as usize;
                    if self.f.forbid[cl] == v {
                        self.same[cl] -= 1;
                    } else {
                        self.other[cl] -= 1;
                    }
                }
            }
            self.value[var] = UNSET;
        }
        self.head = self.head.min(mark);
    }

    /// Whether the assignment already loses to some transposed copy of itself
    /// under the order "red before blue, lowest rank first".
    fn dominated(&self) -> bool {
        for moved in &self.f.symmetry {
            for &(r, s) in moved {
                let (a, b) = (self.value[r as usize], self.value[s as usize]);
                if a == UNSET || b == UNSET {
                    break;
                }
                if a != b {
                    if a == BLUE {
                        return true;
                    }
                    break;
                }
            }
        }
        false
    }

    fn pick(&self) -> Option<u32> {
        if self.branching.lowest_first {
            self.value.iter().position(|&v| v == UNSET).map(|r| r as u32)
        } else {
            self.value.iter().rposition(|&v| v == UNSET).map(|r| r as u32)
        }
    }

    /// Applies decisions in order; false if they conflict or are pruned.
    pub fn assume(&mut self, decisions: &[(u32, Color)]) -> bool {
        for &(var, c) in decisions {
            if !self.enqueue(var, code(c)) || !self.propagate() {
                return false;
            }
        }
        self.propagate() && !self.dominated()
    }

    /// Enumerates decision prefixes of length `depth` that survive propagation.
    pub fn prefixes(&mut self, depth: usize, out: &mut Vec<Vec<(u32, Color)>>, cur: &mut Vec<(u32, Color)>) {
        if !self.propagate() || self.dominated() {
            return;
        }
        let var = match self.pick() {
            Some(v) if cur.len() < depth => v,
            _ => {
                out.push(cur.clone());
                return;
            }
        };
        for c in [self.branching.first, self.branching.first.other()] {
            let mark = self.trail.len();
            self.enqueue(var, code(c));
            cur.push((var, c));
            self.prefixes(depth, out, cur);
            cur.pop();
            self.undo(mark);
        }
    }

    pub fn run(&mut self, limits: &Limits) -> Outcome {
        self.counters.nodes += 1;
        if limits.over(self.counters.nodes) {
            return Outcome::Unknown;
        }
        if !self.propagate() {
            self.counters.conflicts += 1;
            return Outcome::Unsat;
        }
        if self.dominated() {
            self.counters.symmetry_cuts += 1;
            return Outcome::Unsat;
        }
        let Some(var) = self.pick() else {
            return Outcome::Sat;
        };
        for c in [self.branching.first, self.branching.first.other()] {
            let mark = self.trail.len();
            self.enqueue(var, code(c));
            match self.run(limits) {
                Outcome::Unsat => self.undo(mark),
                other => return other,
            }
        }
        Outcome::Unsat
    }
}
