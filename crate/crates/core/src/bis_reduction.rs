//! Counting independent sets with nothing but a bipartite vertex-cover
//! counter: every edge of `G` is replaced by the gadget `H_l` (with one `l`
//! per block of edges), and the resulting counts pin down how many vertex
//! sets of `G` have each type. The sets whose type leaves no edge uncovered
//! are exactly the vertex covers of `G`, whose complements are its
//! independent sets.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{partition_edges, substitute_gadget, BlockPartition, Multigraph};
use crate::oracles::{vc_bipartite, OracleBudget};
use crate::polynomial::{build_vandermonde, KroneckerSolution, KroneckerSystem, Tau};
use crate::rational::{to_integer, Rational};
use crate::transcript::{OracleTranscript, TranscriptEntry};

/// Largest `((d+1)^3)^b` grid the pipeline will query.
pub const DEFAULT_BIS_GRID_BUDGET: u64 = 1 << 16;

/// Largest base graph `conditioned_vc` enumerates.
pub const CONDITIONED_VERTEX_GUARD: usize = 20;

/// Vertex covers of `H_l` containing neither endpoint, exactly the first one,
/// and both: `(2^l, 3^l, 5^l)`.
pub fn gadget_counts(ell: u32) -> Result<(BigUint, BigUint, BigUint)> {
    if ell == 0 {
        return Err(Error::InvalidArgument("gadget size must be at least 1".into()));
    }
    let p = |b: u32| num_traits::pow(BigUint::from(b), ell as usize);
    Ok((p(2), p(3), p(5)))
}

/// Same buckets as [`gadget_counts`], by enumerating every vertex subset of
/// `H_l` built on a single edge.
pub fn gadget_counts_bruteforce(ell: u32, budget: &OracleBudget) -> Result<(BigUint, BigUint, BigUint)> {
    let k2 = Multigraph::from_pairs(2, &[(0, 1)])?;
    let h = substitute_gadget(&k2, &partition_edges(&k2, 1)?, &[ell])?;
    let n = h.vertex_count();
    if n > budget.is_vertices {
        return Err(Error::Budget {
            what: "vertex count for subset enumeration",
            size: n as u64,
            limit: budget.is_vertices as u64,
        });
    }
    let copies = h.edge_copies();
    let mut buckets = [0u64; 4];
    for s in 0u64..(1u64 << n) {
        if copies.iter().all(|&(u, v)| (s >> u | s >> v) & 1 == 1) {
            buckets[(s & 3) as usize] += 1;
        }
    }
    // bit 0 is u, bit 1 is v; "exactly one" is read with u in and v out
    Ok((buckets[0].into(), buckets[1].into(), buckets[3].into()))
}

/// Per block, how many of its edges meet `S` in 0, 1 and 2 endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeMatrix {
    pub rows: Vec<Tau>,
}

impl TypeMatrix {
    pub fn first_column_zero(&self) -> bool {
        self.rows.iter().all(|r| r[0] == 0)
    }

    /// Row sums equal the block sizes.
    pub fn is_feasible(&self, part: &BlockPartition) -> bool {
        self.rows.len() == part.block_count()
            && self
                .rows
                .iter()
                .zip(&part.blocks)
                .all(|(r, b)| r.iter().sum::<u32>() as usize == b.len())
    }
}

/// The type of `S ⊆ V(g)`, given as a membership vector.
pub fn type_of(g: &Multigraph, part: &BlockPartition, s: &[bool]) -> Result<TypeMatrix> {
    if s.len() != g.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "membership vector has length {} for {} vertices",
            s.len(),
            g.vertex_count()
        )));
    }
    part.validate(g)?;
    let rows = part
        .blocks
        .iter()
        .map(|block| {
            let mut row = [0u32; 3];
            for &id in block {
                let e = g.edge(id);
                row[s[e.u] as usize + s[e.v] as usize] += 1;
            }
            row
        })
        .collect();
    Ok(TypeMatrix { rows })
}

fn check_conditioned(g: &Multigraph, part: &BlockPartition) -> Result<()> {
    g.ensure_simple("conditioned vertex-cover count")?;
    part.validate(g)?;
    let n = g.vertex_count();
    if n > CONDITIONED_VERTEX_GUARD {
        return Err(Error::Budget {
            what: "base vertex count for conditioned enumeration",
            size: n as u64,
            limit: CONDITIONED_VERTEX_GUARD as u64,
        });
    }
    Ok(())
}

/// Vertex covers of `substitute_gadget(g, part, ell)`, computed by summing
/// over every `S ⊆ V(g)` the product of per-edge gadget counts.
pub fn conditioned_vc(g: &Multigraph, part: &BlockPartition, ell: &[u32]) -> Result<BigUint> {
    check_conditioned(g, part)?;
    if ell.len() != part.block_count() {
        return Err(Error::InvalidArgument(format!(
            "{} gadget sizes given for {} blocks",
            ell.len(),
            part.block_count()
        )));
    }
    let block_of = part.block_of(g.edge_count());
    let factors: Vec<[BigUint; 3]> = ell
        .iter()
        .map(|&l| gadget_counts(l).map(|(a, b, c)| [a, b, c]))
        .collect::<Result<_>>()?;
    let n = g.vertex_count();
    let mut total = BigUint::zero();
    for s in 0u64..(1u64 << n) {
        let mut term = BigUint::one();
        for (id, e) in g.edges().iter().enumerate() {
            let hit = ((s >> e.u) & 1) + ((s >> e.v) & 1);
            term *= &factors[block_of[id]][hit as usize];
        }
        total += term;
    }
    Ok(total)
}

/// How many `S ⊆ V(g)` have each type.
pub fn type_census(g: &Multigraph, part: &BlockPartition) -> Result<HashMap<TypeMatrix, u64>> {
    check_conditioned(g, part)?;
    let n = g.vertex_count();
    let mut census = HashMap::new();
    let mut s = vec![false; n];
    for mask in 0u64..(1u64 << n) {
        for (v, slot) in s.iter_mut().enumerate() {
            *slot = (mask >> v) & 1 == 1;
        }
        *census.entry(type_of(g, part, &s)?).or_insert(0) += 1;
    }
    Ok(census)
}

/// One query: the base graph, its partition, and the gadget size per block.
#[derive(Clone, Copy, Debug)]
pub struct GadgetQuery<'a> {
    pub base: &'a Multigraph,
    pub part: &'a BlockPartition,
    pub ell: &'a [u32],
}

impl GadgetQuery<'_> {
    pub fn graph(&self) -> Result<Multigraph> {
        substitute_gadget(self.base, self.part, self.ell)
    }
}

/// Counts vertex covers of the bipartite graph a query describes.
pub trait BipartiteVcOracle {
    fn name(&self) -> &str;
    fn count(&self, query: &GadgetQuery<'_>, gadget_graph: &Multigraph) -> Result<BigUint>;
}

/// Enumerates the gadget graph itself.
#[derive(Clone, Copy, Debug, Default)]
pub struct BruteBipartiteOracle {
    pub budget: OracleBudget,
}

impl BipartiteVcOracle for BruteBipartiteOracle {
    fn name(&self) -> &str {
        "brute"
    }

    fn count(&self, _query: &GadgetQuery<'_>, gadget_graph: &Multigraph) -> Result<BigUint> {
        vc_bipartite(gadget_graph, &self.budget)
    }
}

/// Sums gadget counts over vertex subsets of the base graph.
#[derive(Clone, Copy, Debug, Default)]
pub struct ConditionedOracle;

impl BipartiteVcOracle for ConditionedOracle {
    fn name(&self) -> &str {
        "conditioned"
    }

    fn count(&self, query: &GadgetQuery<'_>, _gadget_graph: &Multigraph) -> Result<BigUint> {
        conditioned_vc(query.base, query.part, query.ell)
    }
}

/// Post-solve sanity checks on the recovered type counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverChecks {
    pub residual_zero: bool,
    pub nonnegative_integers: bool,
    pub infeasible_types_zero: bool,
    /// `Σ x_t = 2^n`
    pub total_matches: bool,
}

impl SolverChecks {
    pub fn all_pass(&self) -> bool {
        self.residual_zero && self.nonnegative_integers && self.infeasible_types_zero && self.total_matches
    }
}

#[derive(Clone, Debug)]
pub struct BisReport {
    pub count: BigUint,
    pub partition: BlockPartition,
    pub queries: u64,
    pub checks: SolverChecks,
    /// Nonzero type counts.
    pub type_counts: HashMap<TypeMatrix, BigUint>,
    pub transcript: OracleTranscript,
}

#[derive(Clone, Copy, Debug)]
pub struct BisParams {
    pub d: usize,
    pub grid_budget: u64,
}

impl BisParams {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("block size d must be at least 1".into()));
        }
        Ok(BisParams {
            d,
            grid_budget: DEFAULT_BIS_GRID_BUDGET,
        })
    }
}

/// Number of independent sets of a simple graph, computed only through
/// vertex-cover counts of bipartite gadget graphs.
pub fn count_is(g: &Multigraph, params: &BisParams, oracle: &dyn BipartiteVcOracle) -> Result<BisReport> {
    g.ensure_simple("count_is")?;
    let part = partition_edges(g, params.d)?;
    let d = u32::try_from(params.d).map_err(|_| Error::InvalidArgument("block size d is too large".into()))?;
    let factor = build_vandermonde(d)?;
    let side = factor.size();
    let blocks = part.block_count();
    let grid = (side as u64)
        .checked_pow(blocks as u32)
        .filter(|&s| s <= params.grid_budget)
        .ok_or(Error::Budget {
            what: "vertex-cover query grid size",
            size: (side as u64).saturating_pow(blocks as u32),
            limit: params.grid_budget,
        })?;

    let mut transcript = OracleTranscript::new();
    let mut rhs = HashMap::with_capacity(grid as usize);
    for (index, ell) in KroneckerSystem::grid_points(side, blocks).enumerate() {
        let query = GadgetQuery {
            base: g,
            part: &part,
            ell: &ell,
        };
        let gadget_graph = query.graph()?;
        let answer = oracle.count(&query, &gadget_graph).map_err(|err| Error::Oracle {
            index,
            source: Box::new(err),
        })?;
        let value = Rational::from_integer(BigInt::from(answer.clone()));
        transcript.push(TranscriptEntry::new(
            index,
            "vertex covers of the gadget graph",
            ell.clone(),
            &gadget_graph,
            None,
            &value,
            &value,
        ));
        rhs.insert(ell, BigInt::from(answer));
    }

    let system = KroneckerSystem { factor, blocks, rhs };
    let solution = system.solve()?;
    let residual_zero = system.residual_is_zero(&solution)?;
    let (checks, type_counts, count) = inspect_solution(g, &part, &system, &solution, residual_zero);
    if !checks.all_pass() {
        return Err(Error::Inconsistent(format!("type-count solution failed its checks: {checks:?}")));
    }
    Ok(BisReport {
        count,
        partition: part,
        queries: grid,
        checks,
        type_counts,
        transcript,
    })
}

fn inspect_solution(
    g: &Multigraph,
    part: &BlockPartition,
    system: &KroneckerSystem,
    solution: &KroneckerSolution,
    residual_zero: bool,
) -> (SolverChecks, HashMap<TypeMatrix, BigUint>, BigUint) {
    let taus = system.factor.taus();
    let mut checks = SolverChecks {
        residual_zero,
        nonnegative_integers: true,
        infeasible_types_zero: true,
        total_matches: false,
    };
    let mut type_counts = HashMap::new();
    let mut total = BigInt::zero();
    let mut covers = BigUint::zero();
    for (flat, x) in solution.values.iter().enumerate() {
        let t = TypeMatrix {
            rows: solution.type_index(flat).into_iter().map(|c| taus[c]).collect(),
        };
        if !t.is_feasible(part) && !x.is_zero() {
            checks.infeasible_types_zero = false;
        }
        let Some(xi) = to_integer(x).filter(|v| !v.is_negative()) else {
            checks.nonnegative_integers = false;
            continue;
        };
        total += &xi;
        if xi.is_zero() {
            continue;
        }
        let xu = xi.to_biguint().expect("checked non-negative");
        if t.first_column_zero() {
            covers += &xu;
        }
        type_counts.insert(t, xu);
    }
    checks.total_matches = total == BigInt::one() << g.vertex_count();
    (checks, type_counts, covers)
}
