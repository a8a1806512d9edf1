//! Forest-polynomial evaluation by bundle collapse, pendant removal and chain
//! reduction, with brute force on whatever core is left.
//!
//! A chain of edges with weights `a_1..a_r` through degree-2 vertices is
//! either fully present (joining its ends, weight `Π a_i`) or contributes any
//! proper subset (weight `P = Π(1 + a_i) − Π a_i`) without affecting
//! connectivity. So it factors out as `P` times a single edge of weight
//! `Π a_i / P`, and as a bare factor `P` when the chain closes into a cycle.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::enumerate::forest_value;
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::oracles::{forest_value_frontier, OracleBudget};
use crate::rational::Rational;

#[derive(Clone, Debug)]
struct WorkEdge {
    u: usize,
    v: usize,
    w: Rational,
    alive: bool,
}

struct Reducer {
    edges: Vec<WorkEdge>,
    incident: Vec<Vec<usize>>,
    stuck: Vec<bool>,
    factor: Rational,
}

/// What the reduction left behind.
#[derive(Clone, Debug)]
pub struct ReducedCore {
    pub factor: Rational,
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub weights: Vec<Rational>,
}

impl Reducer {
    fn new(g: &Multigraph, weights: &[Rational]) -> Self {
        let mut r = Reducer {
            edges: Vec::new(),
            incident: vec![Vec::new(); g.vertex_count()],
            stuck: vec![false; g.vertex_count()],
            factor: Rational::one(),
        };
        for (e, w) in g.edges().iter().zip(weights) {
            r.push(e.u, e.v, Rational::from_integer(e.mult.into()) * w);
        }
        r
    }

    fn push(&mut self, u: usize, v: usize, w: Rational) {
        let id = self.edges.len();
        self.edges.push(WorkEdge { u, v, w, alive: true });
        self.incident[u].push(id);
        self.incident[v].push(id);
    }

    fn kill(&mut self, id: usize) {
        self.edges[id].alive = false;
    }

    fn live_incident(&mut self, v: usize) -> &[usize] {
        let edges = &self.edges;
        self.incident[v].retain(|&id| edges[id].alive);
        &self.incident[v]
    }

    fn other(&self, id: usize, v: usize) -> usize {
        let e = &self.edges[id];
        if e.u == v {
            e.v
        } else {
            e.u
        }
    }

    /// Merges parallel edges into one with the summed weight and drops
    /// zero-weight edges. Returns true if anything changed.
    fn merge_parallel(&mut self) -> bool {
        let mut bundles: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (id, e) in self.edges.iter().enumerate() {
            if e.alive {
                bundles.entry((e.u.min(e.v), e.u.max(e.v))).or_default().push(id);
            }
        }
        let mut changed = false;
        for ids in bundles.into_values() {
            let keep = ids[0];
            if ids.len() > 1 {
                let total: Rational = ids.iter().map(|&id| self.edges[id].w.clone()).sum();
                for &id in &ids[1..] {
                    self.kill(id);
                }
                self.edges[keep].w = total;
                changed = true;
            }
            if self.edges[keep].w.is_zero() {
                self.kill(keep);
                changed = true;
            }
        }
        changed
    }

    /// Walks from `start` along `first` through degree-2 vertices. Returns the
    /// traversed edges, the internal vertices passed, and the far end (which
    /// equals `start` when the walk closes a cycle).
    fn walk(&mut self, start: usize, first: usize) -> (Vec<usize>, Vec<usize>, usize) {
        let mut edges = vec![first];
        let mut inner = Vec::new();
        let mut cur = start;
        let mut edge = first;
        loop {
            let next = self.other(edge, cur);
            if next == start || self.stuck[next] {
                return (edges, inner, next);
            }
            let inc = self.live_incident(next).to_vec();
            if inc.len() != 2 {
                return (edges, inner, next);
            }
            let follow = if inc[0] == edge { inc[1] } else { inc[0] };
            inner.push(next);
            edges.push(follow);
            cur = next;
            edge = follow;
        }
    }

    fn reduce_chain(&mut self, v: usize) -> bool {
        let inc = self.live_incident(v).to_vec();
        let [e1, e2] = inc[..] else { return false };
        let (edges1, inner1, end1) = self.walk(v, e1);
        let (chain_edges, inner, ends) = if end1 == v {
            (edges1, inner1, None)
        } else {
            let (edges2, inner2, end2) = self.walk(v, e2);
            let mut all = edges2;
            all.reverse();
            all.extend(edges1);
            let mut verts = inner2;
            verts.push(v);
            verts.extend(inner1);
            (all, verts, Some((end2, end1)))
        };
        let joined: Rational = chain_edges.iter().map(|&id| self.edges[id].w.clone()).product();
        let loose: Rational = chain_edges
            .iter()
            .map(|&id| Rational::one() + &self.edges[id].w)
            .product::<Rational>()
            - &joined;
        match ends {
            Some((x, y)) if x != y => {
                if loose.is_zero() {
                    for &u in &inner {
                        self.stuck[u] = true;
                    }
                    self.stuck[v] = true;
                    return false;
                }
                for &id in &chain_edges {
                    self.kill(id);
                }
                let w = joined / &loose;
                self.factor *= loose;
                self.push(x, y, w);
            }
            // closed cycle, either free-standing or hanging off one vertex
            _ => {
                for &id in &chain_edges {
                    self.kill(id);
                }
                self.factor *= loose;
            }
        }
        true
    }

    fn run(&mut self) {
        loop {
            let mut changed = self.merge_parallel();
            for v in 0..self.incident.len() {
                if self.factor.is_zero() {
                    return;
                }
                let deg = self.live_incident(v).len();
                if deg == 1 {
                    let id = self.incident[v][0];
                    self.factor *= Rational::one() + &self.edges[id].w;
                    self.kill(id);
                    changed = true;
                } else if deg == 2 && !self.stuck[v] {
                    changed |= self.reduce_chain(v);
                }
            }
            if !changed {
                return;
            }
        }
    }

    fn core(self) -> ReducedCore {
        let mut index = vec![usize::MAX; self.incident.len()];
        let mut next = 0;
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for e in self.edges.into_iter().filter(|e| e.alive) {
            for x in [e.u, e.v] {
                if index[x] == usize::MAX {
                    index[x] = next;
                    next += 1;
                }
            }
            edges.push((index[e.u], index[e.v]));
            weights.push(e.w);
        }
        ReducedCore {
            factor: self.factor,
            vertex_count: next,
            edges,
            weights,
        }
    }
}

/// Applies the reductions exhaustively; `weights` has one entry per edge record.
pub fn reduce(g: &Multigraph, weights: &[Rational]) -> Result<ReducedCore> {
    if weights.len() != g.edge_count() {
        return Err(Error::InvalidArgument(format!(
            "{} weights given for {} edges",
            weights.len(),
            g.edge_count()
        )));
    }
    let mut r = Reducer::new(g, weights);
    r.run();
    Ok(r.core())
}

/// `F(g; w)` via reduction plus brute force on a core of at most `guard` edges.
pub fn forest_value_sp(g: &Multigraph, weights: &[Rational], guard: u64) -> Result<Rational> {
    forest_value_sp_with(g, weights, guard, None)
}

/// Like [`forest_value_sp`], but a core above `guard` edges is handed to the
/// frontier sweep instead of failing.
pub fn forest_value_sp_sweep(
    g: &Multigraph,
    weights: &[Rational],
    guard: u64,
    budget: &OracleBudget,
) -> Result<Rational> {
    forest_value_sp_with(g, weights, guard, Some(budget))
}

fn forest_value_sp_with(
    g: &Multigraph,
    weights: &[Rational],
    guard: u64,
    sweep: Option<&OracleBudget>,
) -> Result<Rational> {
    let core = reduce(g, weights)?;
    if core.factor.is_zero() {
        return Ok(Rational::zero());
    }
    if let (Some(budget), true) = (sweep, core.edges.len() as u64 > guard) {
        let h = Multigraph::from_pairs(core.vertex_count, &core.edges)?;
        return Ok(core.factor * forest_value_frontier(&h, &core.weights, budget)?);
    }
    if core.edges.len() as u64 > guard {
        return Err(Error::Budget {
            what: "irreducible core edge count",
            size: core.edges.len() as u64,
            limit: guard,
        });
    }
    Ok(core.factor * forest_value(core.vertex_count, &core.edges, &core.weights))
}
