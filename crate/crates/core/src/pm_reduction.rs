//! Counting perfect matchings with nothing but a simple-graph forest oracle:
//! apex → block interpolation → odd stretch → oracle → coefficient extraction.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forest::{
    forest_value_bruteforce, forest_value_sp_sweep, g_k, pm_coefficient_extract, stretch_prefactor,
    DEFAULT_EDGE_GUARD,
};
use crate::graph::{add_apex, stretch, ApexLabels, Edge, Multigraph};
use crate::oracles::{forest_value_frontier, OracleBudget};
use crate::polynomial::{default_nodes, interpolate_grid, GridValues, SparsePolynomial};
use crate::rational::{int, pow, Rational};
use crate::transcript::{OracleTranscript, TranscriptEntry};

/// Largest interpolation grid the pipeline will query.
pub const DEFAULT_GRID_BUDGET: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmReductionParams {
    /// Interpolation class size `C`.
    pub block_size: usize,
    /// Stretch factor, odd so that `g_k` is total.
    pub k: u32,
    /// Tutte point `x` the simple-graph oracle stands in for.
    pub x: Rational,
    /// `1 / (x − 1)`
    pub t: Rational,
    /// `g_k(t)`
    pub z0: Rational,
    pub grid_budget: u64,
}

impl PmReductionParams {
    pub fn new(block_size: usize, x: Rational, k: u32) -> Result<Self> {
        if block_size == 0 {
            return Err(Error::InvalidArgument("block size C must be at least 1".into()));
        }
        if k.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("stretch factor k = {k} must be odd")));
        }
        let shift = &x - Rational::one();
        if shift.is_zero() {
            return Err(Error::Domain("x = 1 is excluded: t = 1/(x - 1) is undefined".into()));
        }
        let t = shift.recip();
        let z0 = g_k(&t, k)?;
        if z0.is_zero() {
            return Err(Error::Domain("g_k(t) vanishes".into()));
        }
        Ok(PmReductionParams {
            block_size,
            k,
            x,
            t,
            z0,
            grid_budget: DEFAULT_GRID_BUDGET,
        })
    }

    /// `C`, `x = 2`, `k = 3`.
    pub fn with_block_size(block_size: usize) -> Result<Self> {
        Self::new(block_size, int(2), 3)
    }
}

/// Evaluator of `F(g; w)` with one weight on every edge copy.
pub trait ForestOracle {
    fn name(&self) -> &str;
    fn forest_value(&self, g: &Multigraph, w: &Rational) -> Result<Rational>;
}

/// Series–parallel reduction; the core is enumerated when it has at most
/// `core_guard` edges and swept otherwise.
#[derive(Clone, Copy, Debug)]
pub struct SeriesParallelOracle {
    pub core_guard: u64,
    pub budget: OracleBudget,
}

impl Default for SeriesParallelOracle {
    fn default() -> Self {
        SeriesParallelOracle {
            core_guard: DEFAULT_EDGE_GUARD,
            budget: OracleBudget::default(),
        }
    }
}

impl ForestOracle for SeriesParallelOracle {
    fn name(&self) -> &str {
        "series-parallel"
    }

    fn forest_value(&self, g: &Multigraph, w: &Rational) -> Result<Rational> {
        forest_value_sp_sweep(g, &vec![w.clone(); g.edge_count()], self.core_guard, &self.budget)
    }
}

/// Plain subset enumeration.
#[derive(Clone, Copy, Debug)]
pub struct BruteForceOracle {
    pub guard: u64,
}

impl Default for BruteForceOracle {
    fn default() -> Self {
        BruteForceOracle {
            guard: DEFAULT_EDGE_GUARD,
        }
    }
}

impl ForestOracle for BruteForceOracle {
    fn name(&self) -> &str {
        "brute-force"
    }

    fn forest_value(&self, g: &Multigraph, w: &Rational) -> Result<Rational> {
        forest_value_bruteforce(g, &vec![w.clone(); g.edge_count()], self.guard)
    }
}

/// Edge-order sweep over connectivity states of the open vertices.
#[derive(Clone, Copy, Debug, Default)]
pub struct FrontierOracle {
    pub budget: OracleBudget,
}

impl ForestOracle for FrontierOracle {
    fn name(&self) -> &str {
        "frontier"
    }

    fn forest_value(&self, g: &Multigraph, w: &Rational) -> Result<Rational> {
        forest_value_frontier(g, &vec![w.clone(); g.edge_count()], &self.budget)
    }
}

/// One answered query: what was sent, what came back, and `F(h; z0)`.
#[derive(Clone, Debug)]
pub struct QueryOutcome {
    pub query_graph: Multigraph,
    pub point: Rational,
    pub answer: Rational,
    pub value: Rational,
}

/// Answers `F(h; z0)` for multigraphs `h` whose copies all weigh `z0`.
pub trait MultigraphOracle {
    fn z0(&self) -> &Rational;
    fn query(&self, h: &Multigraph) -> Result<QueryOutcome>;
}

/// Asks a forest oracle about the multigraph directly.
pub struct DirectOracle<'a> {
    pub inner: &'a dyn ForestOracle,
    pub z0: Rational,
}

impl MultigraphOracle for DirectOracle<'_> {
    fn z0(&self) -> &Rational {
        &self.z0
    }

    fn query(&self, h: &Multigraph) -> Result<QueryOutcome> {
        let answer = self.inner.forest_value(h, &self.z0)?;
        Ok(QueryOutcome {
            query_graph: h.clone(),
            point: self.z0.clone(),
            value: answer.clone(),
            answer,
        })
    }
}

/// Realizes a multigraph query through a simple-graph oracle at `t`.
pub struct StretchOracle<'a> {
    pub simple: &'a dyn ForestOracle,
    pub params: &'a PmReductionParams,
}

impl MultigraphOracle for StretchOracle<'_> {
    fn z0(&self) -> &Rational {
        &self.params.z0
    }

    fn query(&self, h: &Multigraph) -> Result<QueryOutcome> {
        simulate_oracle_via_stretch(h, self.params, self.simple)
    }
}

/// `F(h; z0)` from `F(H'; t)` where `H'` is the `k`-stretch of `h`:
/// `F(h; z0) = F(H'; t) / ((t+1)^k − t^k)^{m_h}` with `m_h` counting copies.
pub fn simulate_oracle_via_stretch(
    h: &Multigraph,
    params: &PmReductionParams,
    simple: &dyn ForestOracle,
) -> Result<QueryOutcome> {
    let prefactor = stretch_prefactor(&params.t, params.k);
    if prefactor.is_zero() {
        return Err(Error::Domain("stretch prefactor (t+1)^k - t^k vanishes".into()));
    }
    let stretched = stretch(h, params.k)?;
    debug_assert!(params.k == 1 || stretched.is_simple());
    let answer = simple.forest_value(&stretched, &params.t)?;
    let value = &answer / pow(&prefactor, h.total_edge_count() as usize);
    Ok(QueryOutcome {
        query_graph: stretched,
        point: params.t.clone(),
        answer,
        value,
    })
}

/// Which indeterminate class each edge of `G'` belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightClasses {
    /// Class index per edge record; `w` classes first, then `z` classes.
    pub class_of: Vec<usize>,
    pub w_classes: usize,
    pub z_classes: usize,
}

impl WeightClasses {
    /// Consecutive groups of at most `c` edges per label, in input order.
    pub fn assign(g: &Multigraph, c: usize) -> Result<Self> {
        let mut is_z = Vec::with_capacity(g.edge_count());
        for e in g.edges() {
            if e.mult != 1 {
                return Err(Error::InvalidArgument(
                    "block interpolation expects a graph without parallel edges".into(),
                ));
            }
            match e.label.as_str() {
                "w" => is_z.push(false),
                l if l == "z" || l.starts_with("z_") => is_z.push(true),
                l => {
                    return Err(Error::InvalidArgument(format!(
                        "edge label `{l}` is neither w nor z"
                    )))
                }
            }
        }
        let m_w = is_z.iter().filter(|z| !**z).count();
        let m_z = is_z.len() - m_w;
        let w_classes = m_w.div_ceil(c);
        let z_classes = m_z.div_ceil(c);
        let (mut seen_w, mut seen_z) = (0, 0);
        let class_of = is_z
            .into_iter()
            .map(|z| {
                if z {
                    seen_z += 1;
                    w_classes + (seen_z - 1) / c
                } else {
                    seen_w += 1;
                    (seen_w - 1) / c
                }
            })
            .collect();
        Ok(WeightClasses {
            class_of,
            w_classes,
            z_classes,
        })
    }

    pub fn count(&self) -> usize {
        self.w_classes + self.z_classes
    }
}

#[derive(Clone, Debug)]
pub struct BlockInterpolation {
    /// `F(G'; w, z)` over variables `["w", "z"]`.
    pub poly: SparsePolynomial,
    pub classes: WeightClasses,
    pub transcript: OracleTranscript,
}

impl BlockInterpolation {
    pub fn query_count(&self) -> usize {
        self.transcript.len()
    }
}

/// `(C+1)^{⌈m_w/C⌉ + ⌈m_z/C⌉}`
pub fn expected_query_count(g_prime: &Multigraph, c: usize) -> Result<u64> {
    let classes = WeightClasses::assign(g_prime, c)?;
    Ok((c as u64 + 1).pow(classes.count() as u32))
}

/// Recovers the bivariate forest polynomial of a `{w, z}`-labeled graph from
/// oracle values at integer multiples of `z0`.
///
/// Edges sharing a label are grouped into classes of at most `C`; each class
/// gets its own indeterminate ranging over `z0·{0..C}` (realized as parallel
/// copies). The interpolant over multipliers is projected back by summing
/// coefficients per `(i, j)` bidegree and dividing by `z0^{i+j}`.
pub fn block_interpolation(
    g_prime: &Multigraph,
    params: &PmReductionParams,
    oracle: &dyn MultigraphOracle,
) -> Result<BlockInterpolation> {
    let z0 = oracle.z0().clone();
    if z0.is_zero() {
        return Err(Error::Domain("z0 must be nonzero".into()));
    }
    let c = params.block_size;
    let classes = WeightClasses::assign(g_prime, c)?;
    let vars: Vec<String> = (0..classes.w_classes)
        .map(|i| format!("x_{}", i + 1))
        .chain((0..classes.z_classes).map(|j| format!("y_{}", j + 1)))
        .collect();
    let shape = vec![c + 1; vars.len()];
    let grid_size = (c as u64 + 1)
        .checked_pow(vars.len() as u32)
        .filter(|&s| s <= params.grid_budget)
        .ok_or(Error::Budget {
            what: "interpolation grid size",
            size: (c as u64 + 1).saturating_pow(vars.len() as u32),
            limit: params.grid_budget,
        })?;

    let mut transcript = OracleTranscript::new();
    let mut values = Vec::with_capacity(grid_size as usize);
    for flat in 0..grid_size as usize {
        let point = GridValues::index_of(&shape, flat);
        let mut h = Multigraph::empty(g_prime.vertex_count());
        for (e, &class) in g_prime.edges().iter().zip(&classes.class_of) {
            let mult = point[class] as u32;
            if mult > 0 {
                h.push_edge(Edge::new(e.u, e.v).with_mult(mult).with_label(e.label.clone()))?;
            }
        }
        let outcome = oracle.query(&h).map_err(|err| Error::Oracle {
            index: flat,
            source: Box::new(err),
        })?;
        transcript.push(TranscriptEntry::new(
            flat,
            "forest value F(H; z0) for one interpolation grid point",
            point.iter().map(|&p| p as u32).collect(),
            &outcome.query_graph,
            Some(&outcome.point),
            &outcome.answer,
            &outcome.value,
        ));
        values.push(outcome.value);
    }

    let nodes = vec![default_nodes(c); vars.len()];
    let multiplier_poly = interpolate_grid(&vars, &nodes, &GridValues { shape, values })?;

    let mut projected: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    for (exps, coeff) in multiplier_poly.terms() {
        let i: u32 = exps[..classes.w_classes].iter().sum();
        let j: u32 = exps[classes.w_classes..].iter().sum();
        *projected.entry((i, j)).or_insert_with(Rational::zero) += coeff;
    }
    let mut poly = SparsePolynomial::zero(vec!["w".into(), "z".into()]);
    for ((i, j), coeff) in projected {
        poly.add_term(vec![i, j], coeff / pow(&z0, (i + j) as usize));
    }
    Ok(BlockInterpolation {
        poly,
        classes,
        transcript,
    })
}

#[derive(Clone, Debug)]
pub struct PmReport {
    pub count: BigInt,
    pub odd_vertex_count: bool,
    /// `F(G'; w, z)` of the apexed graph; absent when `n` is odd.
    pub apex_poly: Option<SparsePolynomial>,
    pub transcript: OracleTranscript,
    pub expected_queries: u64,
}

/// Number of perfect matchings of a simple graph, computed only through
/// forest-oracle queries on simple graphs.
pub fn count_pm(g: &Multigraph, params: &PmReductionParams, simple: &dyn ForestOracle) -> Result<PmReport> {
    g.ensure_simple("count_pm")?;
    let n = g.vertex_count();
    if n % 2 == 1 {
        return Ok(PmReport {
            count: BigInt::zero(),
            odd_vertex_count: true,
            apex_poly: None,
            transcript: OracleTranscript::new(),
            expected_queries: 0,
        });
    }
    let (g_prime, _) = add_apex(g, ApexLabels::Uniform)?;
    let expected_queries = expected_query_count(&g_prime, params.block_size)?;
    let oracle = StretchOracle { simple, params };
    let interp = block_interpolation(&g_prime, params, &oracle)?;
    let at_minus_one = interp
        .poly
        .partial_eval(&BTreeMap::from([("z".to_string(), int(-1))]));
    let extraction = pm_coefficient_extract(&at_minus_one, n)?;
    Ok(PmReport {
        count: extraction.count,
        odd_vertex_count: false,
        apex_poly: Some(interp.poly),
        transcript: interp.transcript,
        expected_queries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::forest_poly_bruteforce;
    use crate::graph::{named_graph, WeightAssignment};
    use crate::rational::frac;

    fn g(name: &str) -> Multigraph {
        named_graph(name).unwrap()
    }

    fn direct_bivariate(g_prime: &Multigraph) -> SparsePolynomial {
        let w = WeightAssignment::new(
            g_prime
                .edges()
                .iter()
                .map(|e| {
                    crate::graph::Weight::Symbol(if e.label.as_str() == "w" { "w" } else { "z" }.into())
                })
                .collect(),
        );
        forest_poly_bruteforce(g_prime, &w)
            .unwrap()
            .poly
            .with_vars(&["w".to_string(), "z".to_string()])
            .unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(PmReductionParams::new(2, int(1), 3).is_err());
        assert!(PmReductionParams::new(2, int(2), 2).is_err());
        assert!(PmReductionParams::new(0, int(2), 3).is_err());
        let p = PmReductionParams::new(2, int(2), 3).unwrap();
        assert_eq!(p.t, int(1));
        assert_eq!(p.z0, frac(1, 7));
        let p = PmReductionParams::new(2, int(-1), 3).unwrap();
        assert_eq!(p.t, frac(-1, 2));
        assert_eq!(p.z0, frac(-1, 2));
    }

    #[test]
    fn weight_classes_round_up() {
        let (gp, _) = add_apex(&g("p3"), ApexLabels::Uniform).unwrap();
        let classes = WeightClasses::assign(&gp, 2).unwrap();
        assert_eq!((classes.w_classes, classes.z_classes), (1, 2));
        assert_eq!(classes.class_of, vec![0, 0, 1, 1, 2]);
        assert_eq!(expected_query_count(&gp, 2).unwrap(), 27);
    }

    #[test]
    fn stretch_simulation_examples() {
        let params = PmReductionParams::with_block_size(2).unwrap();
        let oracle = SeriesParallelOracle::default();
        let double = Multigraph::new(2, vec![Edge::new(0, 1).with_mult(2)]).unwrap();
        let out = simulate_oracle_via_stretch(&double, &params, &oracle).unwrap();
        assert_eq!(out.value, int(1) + int(2) * &params.z0);
        assert_eq!(out.query_graph.edge_count(), 6);
        let brute = BruteForceOracle::default().forest_value(&out.query_graph, &params.t).unwrap();
        assert_eq!(brute, out.answer);

        let empty = Multigraph::empty(3);
        assert_eq!(simulate_oracle_via_stretch(&empty, &params, &oracle).unwrap().value, int(1));
        let k2 = g("k2");
        assert_eq!(
            simulate_oracle_via_stretch(&k2, &params, &oracle).unwrap().value,
            int(1) + &params.z0
        );
    }

    #[test]
    fn interpolation_recovers_apexed_triangle() {
        let (gp, _) = add_apex(&g("k2"), ApexLabels::Uniform).unwrap();
        for c in [1, 2, 3] {
            let params = PmReductionParams::with_block_size(c).unwrap();
            let oracle = StretchOracle {
                simple: &SeriesParallelOracle::default(),
                params: &params,
            };
            let r = block_interpolation(&gp, &params, &oracle).unwrap();
            assert_eq!(r.poly, direct_bivariate(&gp), "C = {c}");
            assert_eq!(r.query_count() as u64, expected_query_count(&gp, c).unwrap());
        }
    }

    #[test]
    fn all_w_graph_has_no_z_terms() {
        let k3 = g("k3");
        let params = PmReductionParams::with_block_size(2).unwrap();
        let oracle = DirectOracle {
            inner: &SeriesParallelOracle::default(),
            z0: params.z0.clone(),
        };
        let r = block_interpolation(&k3, &params, &oracle).unwrap();
        assert!(r.poly.terms().keys().all(|e| e[1] == 0));
        assert_eq!(r.poly, direct_bivariate(&k3));
    }

    #[test]
    fn oracle_independence_on_small_queries() {
        let (gp, _) = add_apex(&g("k2"), ApexLabels::Uniform).unwrap();
        let params = PmReductionParams::with_block_size(2).unwrap();
        let sp = block_interpolation(
            &gp,
            &params,
            &StretchOracle {
                simple: &SeriesParallelOracle::default(),
                params: &params,
            },
        )
        .unwrap();
        let brute = block_interpolation(
            &gp,
            &params,
            &StretchOracle {
                simple: &BruteForceOracle::default(),
                params: &params,
            },
        )
        .unwrap();
        assert_eq!(sp.poly, brute.poly);
    }

    #[test]
    fn count_pm_small_graphs() {
        let oracle = SeriesParallelOracle::default();
        for (name, expected) in [("k2", 1), ("c4", 2), ("p4", 1), ("k4", 3)] {
            let params = PmReductionParams::with_block_size(2).unwrap();
            let r = count_pm(&g(name), &params, &oracle).unwrap();
            assert_eq!(r.count, BigInt::from(expected), "{name}");
            assert_eq!(r.transcript.len() as u64, r.expected_queries);
        }
        let r = count_pm(&g("k3"), &PmReductionParams::with_block_size(2).unwrap(), &oracle).unwrap();
        assert!(r.odd_vertex_count);
        assert_eq!(r.count, BigInt::zero());
        assert!(r.transcript.is_empty());
    }

    #[test]
    fn frontier_oracle_agrees() {
        let params = PmReductionParams::with_block_size(2).unwrap();
        let r = count_pm(&g("c4"), &params, &FrontierOracle::default()).unwrap();
        assert_eq!(r.count, BigInt::from(2));
    }

    #[test]
    fn transcript_replays() {
        let params = PmReductionParams::with_block_size(2).unwrap();
        let oracle = SeriesParallelOracle::default();
        // brute force re-answers the small instance independently
        let r = count_pm(&g("k2"), &params, &oracle).unwrap();
        let bad = r
            .transcript
            .replay(|h, t| BruteForceOracle { guard: 22 }.forest_value(h, t.unwrap()))
            .unwrap();
        assert!(bad.is_empty());
        let r = count_pm(&g("p4"), &params, &oracle).unwrap();
        let bad = r.transcript.replay(|h, t| oracle.forest_value(h, t.unwrap())).unwrap();
        assert!(bad.is_empty());
    }

    #[test]
    fn grid_budget_enforced() {
        let mut params = PmReductionParams::with_block_size(1).unwrap();
        params.grid_budget = 10;
        let err = count_pm(&g("c4"), &params, &SeriesParallelOracle::default()).unwrap_err();
        assert!(err.is_budget());
    }
}
