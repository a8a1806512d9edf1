//! Graph transformations used by the reductions. New vertices are always
//! appended after the existing ones, so `0..n` keeps naming the input vertices.

use super::{Edge, Label, Multigraph, WeightAssignment};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// How the edges to the apex are labeled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApexLabels {
    /// `z_v` for the edge to original vertex `v`.
    PerVertex,
    /// A single symbol `z` on every apex edge.
    Uniform,
}

/// Joins a new vertex `n` to every original vertex. Original edges get the
/// label `w`; apex edges get `z_v` or `z`.
pub fn add_apex(g: &Multigraph, labels: ApexLabels) -> Result<(Multigraph, WeightAssignment)> {
    g.ensure_simple("add_apex")?;
    let n = g.vertex_count();
    let w = Label::new("w");
    let z = Label::new("z");
    let mut out = Multigraph::empty(n + 1);
    for e in g.edges() {
        out.push_edge(Edge::new(e.u, e.v).with_label(w.clone()))?;
    }
    for v in 0..n {
        let label = match labels {
            ApexLabels::PerVertex => Label::new(&format!("z_{v}")),
            ApexLabels::Uniform => z.clone(),
        };
        out.push_edge(Edge::new(v, n).with_label(label))?;
    }
    let weights = WeightAssignment::from_labels(&out);
    Ok((out, weights))
}

/// Replaces every edge copy by a path with `k` edges. Parallel copies become
/// internally disjoint paths that inherit the record's label.
pub fn stretch(g: &Multigraph, k: u32) -> Result<Multigraph> {
    if k == 0 {
        return Err(Error::InvalidArgument("stretch factor must be at least 1".into()));
    }
    if k == 1 {
        return Ok(g.clone());
    }
    let mut out = Multigraph::empty(g.vertex_count());
    for e in g.edges() {
        for _ in 0..e.mult {
            push_path(&mut out, e.u, e.v, k, &e.label)?;
        }
    }
    Ok(out)
}

fn push_path(g: &mut Multigraph, u: usize, v: usize, k: u32, label: &Label) -> Result<()> {
    let mut prev = u;
    for _ in 1..k {
        let mid = g.add_vertex();
        g.push_edge(Edge::new(prev, mid).with_label(label.clone()))?;
        prev = mid;
    }
    g.push_edge(Edge::new(prev, v).with_label(label.clone()))?;
    Ok(())
}

/// Gives edge `e` multiplicity `mults[e]`.
pub fn fatten(g: &Multigraph, mults: &[u32]) -> Result<Multigraph> {
    g.ensure_simple("fatten")?;
    if mults.len() != g.edge_count() {
        return Err(Error::InvalidArgument(format!(
            "{} multiplicities given for {} edges",
            mults.len(),
            g.edge_count()
        )));
    }
    let mut out = g.clone();
    for (e, &m) in out.edges.iter_mut().zip(mults) {
        if m == 0 {
            return Err(Error::InvalidArgument(format!(
                "multiplicity 0 for edge {{{}, {}}}",
                e.u, e.v
            )));
        }
        e.mult = m;
    }
    Ok(out)
}

/// Disjoint edge-id blocks of size at most `d` covering every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPartition {
    pub blocks: Vec<Vec<usize>>,
    pub d: usize,
}

impl BlockPartition {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Block index of every edge id.
    pub fn block_of(&self, edge_count: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; edge_count];
        for (i, block) in self.blocks.iter().enumerate() {
            for &e in block {
                out[e] = i;
            }
        }
        out
    }

    pub fn validate(&self, g: &Multigraph) -> Result<()> {
        let mut seen = vec![false; g.edge_count()];
        for block in &self.blocks {
            if block.len() > self.d {
                return Err(Error::InvalidArgument(format!(
                    "block of size {} exceeds d = {}",
                    block.len(),
                    self.d
                )));
            }
            for &e in block {
                if e >= seen.len() || std::mem::replace(&mut seen[e], true) {
                    return Err(Error::InvalidArgument(format!(
                        "edge id {e} is out of range or repeated"
                    )));
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidArgument("partition does not cover every edge".into()));
        }
        Ok(())
    }
}

/// Consecutive blocks of `d` edges in input order; the last may be smaller.
pub fn partition_edges(g: &Multigraph, d: usize) -> Result<BlockPartition> {
    if d == 0 {
        return Err(Error::InvalidArgument("block size d must be at least 1".into()));
    }
    let ids: Vec<usize> = (0..g.edge_count()).collect();
    Ok(BlockPartition {
        blocks: ids.chunks(d).map(<[usize]>::to_vec).collect(),
        d,
    })
}

/// Replaces every edge of block `i` by `ell[i]` internally disjoint 4-paths
/// between its endpoints (the gadget `H_ell`).
pub fn substitute_gadget(g: &Multigraph, part: &BlockPartition, ell: &[u32]) -> Result<Multigraph> {
    g.ensure_simple("substitute_gadget")?;
    part.validate(g)?;
    if ell.len() != part.block_count() {
        return Err(Error::InvalidArgument(format!(
            "{} gadget sizes given for {} blocks",
            ell.len(),
            part.block_count()
        )));
    }
    if let Some(i) = ell.iter().position(|&l| l == 0) {
        return Err(Error::InvalidArgument(format!("gadget size 0 for block {i}")));
    }
    let mut out = Multigraph::empty(g.vertex_count());
    for (block, &l) in part.blocks.iter().zip(ell) {
        for &id in block {
            let e = g.edge(id);
            for _ in 0..l {
                push_path(&mut out, e.u, e.v, 4, &e.label)?;
            }
        }
    }
    Ok(out)
}

/// Merges each bundle of parallel copies into one edge whose weight is the
/// sum of the copies' weights. Returns the simple graph and its weights.
pub fn collapse_parallel(g: &Multigraph, base: &[Rational]) -> Result<(Multigraph, Vec<Rational>)> {
    if base.len() != g.edge_count() {
        return Err(Error::InvalidArgument(format!(
            "{} weights given for {} edges",
            base.len(),
            g.edge_count()
        )));
    }
    let mut out = Multigraph::empty(g.vertex_count());
    let mut weights = Vec::new();
    let mut bundles: Vec<_> = g.bundles().into_values().collect();
    bundles.sort_by_key(|ids| ids[0]);
    for ids in bundles {
        let first = g.edge(ids[0]);
        let total: Rational = ids
            .iter()
            .map(|&id| Rational::from_integer(g.edge(id).mult.into()) * &base[id])
            .sum();
        out.push_edge(Edge::new(first.u, first.v).with_label(first.label.clone()))?;
        weights.push(total);
    }
    Ok((out, weights))
}
