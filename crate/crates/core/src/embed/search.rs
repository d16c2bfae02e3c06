//! Backtracking over template vertices in label order.
//!
//! Template vertex `j` is assigned before `j + 1`, so each edge is checked the
//! moment its last vertex is placed; for loose structures that is one check
//! every `k - 1` steps, anchored on the connector shared with the previous
//! edge. Host candidates are tried in ascending label order.
//!
//! Two sound reductions are applied:
//! - free interior vertices of one edge (degree one, not fixed) are assigned
//!   in increasing order, since permuting them is a template automorphism;
//! - when a coloring is given, only the smallest admissible vertex of each
//!   twin class is tried at a given step.

use crate::template::{LooseTemplate, Vertex};

pub(crate) struct Plan {
    pub v: usize,
    pub k: usize,
    /// Template edges as 0-based template vertex indices.
    pub edges: Vec<Vec<usize>>,
    /// Edges whose last assigned vertex is this position.
    pub completes: Vec<Vec<usize>>,
    /// Position whose host label this position must exceed.
    pub order_pred: Vec<Option<usize>>,
}

impl Plan {
    pub fn new(t: &LooseTemplate, fixed: Option<&[Option<Vertex>]>) -> Plan {
        let v = t.vertex_count();
        let k = t.k;
        let edges: Vec<Vec<usize>> = (1..=t.n)
            .map(|i| {
                t.edge_sequence(i)
                    .unwrap()
                    .into_iter()
                    .map(|x| x as usize - 1)
                    .collect()
            })
            .collect();
        let mut completes = vec![Vec::new(); v];
        for (ei, e) in edges.iter().enumerate() {
            completes[*e.iter().max().unwrap()].push(ei);
        }
        let is_fixed = |p: usize| fixed.is_some_and(|f| f[p].is_some());
        let mut order_pred = vec![None; v];
        for e in &edges {
            let mut prev: Option<usize> = None;
            for &p in &e[1..k - 1] {
                if is_fixed(p) {
                    continue;
                }
                order_pred[p] = prev;
                prev = Some(p);
            }
        }
        Plan {
            v,
            k,
            edges,
            completes,
            order_pred,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Flow {
    Continue,
    Stop,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Exit {
    /// Search space exhausted.
    Complete,
    /// The visitor asked to stop.
    Stopped,
    /// Node budget ran out.
    Budget,
}

pub(crate) struct Engine<'a, P> {
    plan: &'a Plan,
    n_vertices: u32,
    allowed: u64,
    reserved: u64,
    fixed: Option<&'a [Option<Vertex>]>,
    twins: Option<&'a [u8]>,
    edge_ok: P,
    pub nodes: u64,
    max_nodes: u64,
    assignment: Vec<Vertex>,
    used: u64,
    scratch: Vec<Vertex>,
}

impl<'a, P: FnMut(&[Vertex]) -> bool> Engine<'a, P> {
    pub fn new(
        plan: &'a Plan,
        n_vertices: u32,
        allowed: u64,
        fixed: Option<&'a [Option<Vertex>]>,
        twins: Option<&'a [u8]>,
        max_nodes: Option<u64>,
        edge_ok: P,
    ) -> Self {
        let reserved = fixed
            .map(|f| f.iter().flatten().fold(0u64, |m, &h| m | 1 << (h - 1)))
            .unwrap_or(0);
        Engine {
            plan,
            n_vertices,
            allowed,
            reserved,
            fixed,
            twins,
            edge_ok,
            nodes: 0,
            max_nodes: max_nodes.unwrap_or(u64::MAX),
            assignment: vec![0; plan.v],
            used: 0,
            scratch: Vec::with_capacity(plan.k),
        }
    }

    pub fn run<V: FnMut(&[Vertex]) -> Flow>(&mut self, visit: &mut V) -> Exit {
        self.step(0, visit)
    }

    fn edges_ok(&mut self, pos: usize) -> bool {
        for &ei in &self.plan.completes[pos] {
            self.scratch.clear();
            for &p in &self.plan.edges[ei] {
                self.scratch.push(self.assignment[p]);
            }
            self.scratch.sort_unstable();
            if !(self.edge_ok)(&self.scratch) {
                return false;
            }
        }
        true
    }

    fn step<V: FnMut(&[Vertex]) -> Flow>(&mut self, pos: usize, visit: &mut V) -> Exit {
        if pos == self.plan.v {
            return match visit(&self.assignment) {
                Flow::Continue => Exit::Complete,
                Flow::Stop => Exit::Stopped,
            };
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Exit::Budget;
        }
        if let Some(h) = self.fixed.and_then(|f| f[pos]) {
            let bit = 1u64 << (h - 1);
            if self.used & bit != 0 {
                return Exit::Complete;
            }
            self.assignment[pos] = h;
            self.used |= bit;
            let r = if self.edges_ok(pos) {
                self.step(pos + 1, visit)
            } else {
                Exit::Complete
            };
            self.used &= !bit;
            return r;
        }
        let floor = self.plan.order_pred[pos].map_or(0, |p| self.assignment[p]);
        let mut tried_classes = 0u64;
        let blocked = self.used | self.reserved | !self.allowed;
        for h in floor + 1..=self.n_vertices {
            let bit = 1u64 << (h - 1);
            if blocked & bit != 0 {
                continue;
            }
            if let Some(tw) = self.twins {
                let cls = 1u64 << tw[(h - 1) as usize];
                if tried_classes & cls != 0 {
                    continue;
                }
                tried_classes |= cls;
            }
            self.assignment[pos] = h;
            self.used |= bit;
            let r = if self.edges_ok(pos) {
                self.step(pos + 1, visit)
            } else {
                Exit::Complete
            };
            self.used &= !bit;
            if r != Exit::Complete {
                return r;
            }
        }
        Exit::Complete
    }
}
