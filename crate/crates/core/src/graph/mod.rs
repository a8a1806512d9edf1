//! Multigraph carrier, weight assignments and the text format.
//!
//! Vertices are dense indices `0..n`. Parallel edges live on a single record
//! with a multiplicity; several records may still share an endpoint pair when
//! a file lists them separately.

mod format;
mod named;
mod transform;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub use format::{parse_graph, write_graph};
pub use named::{named_graph, NAMED_GRAPHS};
pub use transform::{
    add_apex, collapse_parallel, fatten, partition_edges, stretch, substitute_gadget, ApexLabels,
    BlockPartition,
};

/// Interned weight tag such as `w`, `z` or `z_3`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(s: &str) -> Self {
        Label(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::new(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub mult: u32,
    pub label: Label,
}

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        Edge {
            u,
            v,
            mult: 1,
            label: Label::new("w"),
        }
    }

    pub fn with_mult(mut self, mult: u32) -> Self {
        self.mult = mult;
        self
    }

    pub fn with_label(mut self, label: impl Into<Label>) -> Self {
        self.label = label.into();
        self
    }

    fn key(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// Loopless multigraph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn empty(n: usize) -> Self {
        Multigraph { n, edges: Vec::new() }
    }

    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut g = Multigraph::empty(n);
        for e in edges {
            g.push_edge(e)?;
        }
        Ok(g)
    }

    /// Simple graph from unlabeled pairs (label `w`, multiplicity 1).
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Multigraph::new(n, pairs.iter().map(|&(u, v)| Edge::new(u, v)).collect())
    }

    pub fn push_edge(&mut self, e: Edge) -> Result<usize> {
        if e.u >= self.n || e.v >= self.n {
            return Err(Error::InvalidArgument(format!(
                "edge {{{}, {}}} has an endpoint outside 0..{}",
                e.u, e.v, self.n
            )));
        }
        if e.u == e.v {
            return Err(Error::InvalidArgument(format!("self-loop at vertex {}", e.u)));
        }
        if e.mult == 0 {
            return Err(Error::InvalidArgument(format!(
                "edge {{{}, {}}} has multiplicity 0",
                e.u, e.v
            )));
        }
        self.edges.push(e);
        Ok(self.edges.len() - 1)
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of edge records (not counting multiplicity).
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of edges counting every parallel copy.
    pub fn total_edge_count(&self) -> u64 {
        self.edges.iter().map(|e| u64::from(e.mult)).sum()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> &Edge {
        &self.edges[id]
    }

    /// Multiplicity one everywhere and no two records on the same pair.
    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        self.edges.iter().all(|e| e.mult == 1 && seen.insert(e.key()))
    }

    pub fn ensure_simple(&self, context: &str) -> Result<()> {
        if self.is_simple() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("{context} requires a simple graph")))
        }
    }

    /// Edge records expanded into one `(u, v)` per parallel copy.
    pub fn edge_copies(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .flat_map(|e| std::iter::repeat_n((e.u, e.v), e.mult as usize))
            .collect()
    }

    /// Neighbour bitmasks; only valid for `n <= 64`.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "adjacency masks need at most 64 vertices");
        let mut adj = vec![0u64; self.n];
        for e in &self.edges {
            adj[e.u] |= 1 << e.v;
            adj[e.v] |= 1 << e.u;
        }
        adj
    }

    pub fn degree(&self, v: usize) -> u64 {
        self.edges
            .iter()
            .filter(|e| e.u == v || e.v == v)
            .map(|e| u64::from(e.mult))
            .sum()
    }

    /// Number of connected components of `(V, E)`, isolated vertices included.
    pub fn component_count(&self) -> usize {
        let mut uf = crate::unionfind::UnionFind::new(self.n);
        for e in &self.edges {
            uf.union(e.u, e.v);
        }
        uf.set_count()
    }

    /// Two-colouring (`false`/`true` per vertex) or `None` if an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            stack.push(s);
            while let Some(u) = stack.pop() {
                let su = side[u].unwrap();
                for &v in &adj[u] {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            stack.push(v);
                        }
                        Some(sv) if sv == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Distinct labels in first-appearance order.
    pub fn labels(&self) -> Vec<Label> {
        let mut out: Vec<Label> = Vec::new();
        for e in &self.edges {
            if !out.contains(&e.label) {
                out.push(e.label.clone());
            }
        }
        out
    }

    /// Same structure with every label replaced.
    pub fn relabeled(&self, label: &Label) -> Multigraph {
        Multigraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    label: label.clone(),
                    ..e.clone()
                })
                .collect(),
        }
    }

    /// Records grouped by unordered endpoint pair, in first-appearance order.
    pub(crate) fn bundles(&self) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut out: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (id, e) in self.edges.iter().enumerate() {
            out.entry(e.key()).or_default().push(id);
        }
        out
    }
}

/// Weight carried by one edge record: a fixed value or a named indeterminate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weight {
    Value(Rational),
    Symbol(Label),
}

/// One weight per edge record; every parallel copy of a record shares it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAssignment(Vec<Weight>);

impl WeightAssignment {
    pub fn new(weights: Vec<Weight>) -> Self {
        WeightAssignment(weights)
    }

    /// Each edge's own label used as its indeterminate.
    pub fn from_labels(g: &Multigraph) -> Self {
        WeightAssignment(g.edges().iter().map(|e| Weight::Symbol(e.label.clone())).collect())
    }

    pub fn uniform_symbol(g: &Multigraph, name: &str) -> Self {
        WeightAssignment(vec![Weight::Symbol(Label::new(name)); g.edge_count()])
    }

    pub fn uniform_value(g: &Multigraph, value: Rational) -> Self {
        WeightAssignment(vec![Weight::Value(value); g.edge_count()])
    }

    pub fn values(values: Vec<Rational>) -> Self {
        WeightAssignment(values.into_iter().map(Weight::Value).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, edge: usize) -> &Weight {
        &self.0[edge]
    }

    pub fn as_slice(&self) -> &[Weight] {
        &self.0
    }

    pub fn check_against(&self, g: &Multigraph) -> Result<()> {
        if self.0.len() != g.edge_count() {
            return Err(Error::InvalidArgument(format!(
                "weight assignment has {} entries for {} edges",
                self.0.len(),
                g.edge_count()
            )));
        }
        Ok(())
    }

    /// The numeric weights, or an error naming the first symbolic entry.
    pub fn rational_values(&self) -> Result<Vec<Rational>> {
        self.0
            .iter()
            .map(|w| match w {
                Weight::Value(r) => Ok(r.clone()),
                Weight::Symbol(s) => Err(Error::InvalidArgument(format!(
                    "weight `{s}` is symbolic; a numeric assignment is required"
                ))),
            })
            .collect()
    }

    /// Substitutes a value for every symbol found in `point`.
    pub fn bind(&self, point: &BTreeMap<String, Rational>) -> WeightAssignment {
        WeightAssignment(
            self.0
                .iter()
                .map(|w| match w {
                    Weight::Symbol(s) => match point.get(s.as_str()) {
                        Some(r) => Weight::Value(r.clone()),
                        None => w.clone(),
                    },
                    Weight::Value(_) => w.clone(),
                })
                .collect(),
        )
    }
}
