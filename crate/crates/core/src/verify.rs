//! Seeded property suites over documented instance families. Each suite
//! compares two independent computations and records every disagreement
//! together with the instance that produced it.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bis_reduction::{conditioned_vc, gadget_counts, gadget_counts_bruteforce};
use crate::csp::{
    affine_sets_exhaustive, count_affine, count_bruteforce, imp2sat_from_bipartite, is_affine,
    pos2sat_from_graph, BooleanRelation,
};
use crate::error::{Error, Result};
use crate::forest::{
    apex_rhs, forest_poly_bruteforce, forest_value_bruteforce, g_k, pm_coefficient_extract,
    stretch_prefactor,
};
use crate::generate::{
    random_affine_instance, random_bipartite, random_multigraph, random_rational, random_simple_graph,
    simple_graphs_up_to_iso,
};
use crate::graph::{
    add_apex, partition_edges, stretch, substitute_gadget, write_graph, ApexLabels, Multigraph, Weight,
    WeightAssignment,
};
use crate::oracles::{
    as_bigint, forest_value_frontier, is_bruteforce, pm_bruteforce, vc_bipartite, vc_bruteforce,
    OracleBudget,
};
use crate::polynomial::{build_vandermonde, kron_det_check, kronecker_solve_dense, KroneckerSystem, Matrix};
use crate::rational::{fmt_rational, frac, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Apex,
    Stretch,
    Gadget,
    Eq6,
    Kron,
    Csp,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 6] = [
        Suite::Apex,
        Suite::Stretch,
        Suite::Gadget,
        Suite::Eq6,
        Suite::Kron,
        Suite::Csp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Apex => "apex",
            Suite::Stretch => "stretch",
            Suite::Gadget => "gadget",
            Suite::Eq6 => "eq6",
            Suite::Kron => "kron",
            Suite::Csp => "csp",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::INDIVIDUAL
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

/// One disagreement between the two sides of a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub check: String,
    pub instance: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: u64,
    pub failures: Vec<Counterexample>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            checks: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check<T: PartialEq + fmt::Display>(
        &mut self,
        check: &str,
        instance: impl FnOnce() -> String,
        expected: T,
        got: T,
    ) {
        self.checks += 1;
        if expected != got {
            self.failures.push(Counterexample {
                check: check.to_string(),
                instance: instance(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<Vec<SuiteReport>> {
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::INDIVIDUAL.to_vec()
    } else {
        vec![suite]
    };
    suites.into_iter().map(|s| run_one(s, seed)).collect()
}

fn run_one(suite: Suite, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(suite);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (suite as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    match suite {
        Suite::Apex => apex_suite(&mut rng, &mut report)?,
        Suite::Stretch => stretch_suite(&mut rng, &mut report)?,
        Suite::Gadget => gadget_suite(&mut rng, &mut report)?,
        Suite::Eq6 => eq6_suite(&mut report)?,
        Suite::Kron => kron_suite(&mut rng, &mut report)?,
        Suite::Csp => csp_suite(&mut rng, &mut report)?,
        Suite::All => unreachable!("expanded by run_suite"),
    }
    Ok(report)
}

fn dump(g: &Multigraph) -> String {
    write_graph(g).trim_end().replace('\n', "; ")
}

fn apex_suite(rng: &mut ChaCha8Rng, report: &mut SuiteReport) -> Result<()> {
    for _ in 0..60 {
        let n = rng.gen_range(1..=6);
        let m = rng.gen_range(0..=8);
        let g = random_simple_graph(rng, n, m);
        let (apexed, _) = add_apex(&g, ApexLabels::PerVertex)?;
        for _ in 0..3 {
            let w = random_rational(rng);
            let z: Vec<Rational> = (0..n).map(|_| random_rational(rng)).collect();
            let mut weights = vec![w.clone(); g.edge_count()];
            weights.extend(z.iter().cloned());
            let lhs = forest_value_bruteforce(&apexed, &weights, 22)?;
            let rhs = apex_rhs(&g, &w, &z)?;
            report.check(
                "F(apex(g)) = apex sum over forests of g",
                || {
                    let zs: Vec<String> = z.iter().map(fmt_rational).collect();
                    format!("{} | w = {} | z = [{}]", dump(&g), fmt_rational(&w), zs.join(", "))
                },
                fmt_rational(&lhs),
                fmt_rational(&rhs),
            );
        }
    }
    let budget = OracleBudget::default();
    for n in [2, 4, 6] {
        for g in simple_graphs_up_to_iso(n).into_iter().filter(|g| g.component_count() == 1) {
            let got = pm_via_apex(&g)?;
            let expected = as_bigint(&pm_bruteforce(&g, &budget)?);
            report.check("signed apex coefficient = perfect matchings", || dump(&g), expected, got);
        }
    }
    Ok(())
}

/// `(−1)^{n/2} [w^{n/2}] F(apex(g); w, z = −1)`, enumerating forests of the
/// apexed graph itself.
pub fn pm_via_apex(g: &Multigraph) -> Result<num_bigint::BigInt> {
    let (apexed, _) = add_apex(g, ApexLabels::Uniform)?;
    let weights = apexed
        .edges()
        .iter()
        .map(|e| {
            if e.label.as_str() == "w" {
                Weight::Symbol("w".into())
            } else {
                Weight::Value(int(-1))
            }
        })
        .collect();
    let poly = forest_poly_bruteforce(&apexed, &WeightAssignment::new(weights))?.poly;
    Ok(pm_coefficient_extract(&poly, g.vertex_count())?.count)
}

/// Graphs with at most six edge copies used by the stretch suite.
pub fn stretch_family(rng: &mut ChaCha8Rng) -> Vec<Multigraph> {
    let mut family: Vec<Multigraph> = (1..=4).flat_map(simple_graphs_up_to_iso).collect();
    for _ in 0..20 {
        let n = rng.gen_range(5..=7);
        let m = rng.gen_range(1..=6);
        family.push(random_simple_graph(rng, n, m));
    }
    while family.len() < 50 {
        let n = rng.gen_range(2..=4);
        let records = rng.gen_range(1..=4);
        let g = random_multigraph(rng, n, records, 3);
        if g.total_edge_count() <= 6 {
            family.push(g);
        }
    }
    family
}

fn stretch_suite(rng: &mut ChaCha8Rng, report: &mut SuiteReport) -> Result<()> {
    let budget = OracleBudget::default();
    let points = [int(1), int(2), int(-2), frac(1, 3)];
    for g in stretch_family(rng) {
        let m = g.total_edge_count() as usize;
        for k in 2..=5u32 {
            let h = stretch(&g, k)?;
            for w in &points {
                let lhs = forest_value_frontier(&h, &vec![w.clone(); h.edge_count()], &budget)?;
                let z = g_k(w, k)?;
                let rhs = crate::rational::pow(&stretch_prefactor(w, k), m)
                    * forest_value_bruteforce(&g, &vec![z; g.edge_count()], 22)?;
                report.check(
                    "F(stretch_k(g); w) = ((w+1)^k - w^k)^m F(g; g_k(w))",
                    || format!("{} | k = {k} | w = {}", dump(&g), fmt_rational(w)),
                    fmt_rational(&lhs),
                    fmt_rational(&rhs),
                );
            }
        }
    }
    Ok(())
}

fn gadget_suite(rng: &mut ChaCha8Rng, report: &mut SuiteReport) -> Result<()> {
    let budget = OracleBudget::default();
    for l in 1..=3 {
        let (a, b, c) = gadget_counts(l)?;
        let (x, y, z) = gadget_counts_bruteforce(l, &budget)?;
        report.check(
            "vertex covers of H_l bucketed by endpoints",
            || format!("l = {l}"),
            format!("({a}, {b}, {c})"),
            format!("({x}, {y}, {z})"),
        );
    }
    for _ in 0..20 {
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(1..=8);
        let g = random_simple_graph(rng, n, m);
        let d = rng.gen_range(1..=3);
        let part = partition_edges(&g, d)?;
        let ell: Vec<u32> = (0..part.block_count()).map(|_| rng.gen_range(1..=3)).collect();
        let h = substitute_gadget(&g, &part, &ell)?;
        let weight: usize = part.blocks.iter().zip(&ell).map(|(b, &l)| b.len() * l as usize).sum();
        let instance = || format!("{} | d = {d} | l = {ell:?}", dump(&g));
        report.check("gadget graph vertex count", instance, n + 3 * weight, h.vertex_count());
        report.check("gadget graph edge count", instance, 4 * weight, h.edge_count());
        report.check("gadget graph is bipartite", instance, true, h.is_bipartite());
    }
    Ok(())
}

fn eq6_suite(report: &mut SuiteReport) -> Result<()> {
    let budget = OracleBudget::default();
    for n in 1..=5 {
        for g in simple_graphs_up_to_iso(n) {
            let m = g.edge_count();
            if m == 0 {
                continue;
            }
            let mut ds = vec![1, 2, m];
            ds.sort_unstable();
            ds.dedup();
            for d in ds {
                let part = partition_edges(&g, d)?;
                for ell in KroneckerSystem::grid_points(2, part.block_count()) {
                    let weight: usize = part.blocks.iter().zip(&ell).map(|(b, &l)| b.len() * l as usize).sum();
                    if n + 3 * weight > 25 {
                        continue;
                    }
                    let h = substitute_gadget(&g, &part, &ell)?;
                    let brute = if h.vertex_count() <= 16 {
                        vc_bruteforce(&h, &budget)?
                    } else {
                        vc_bipartite(&h, &budget)?
                    };
                    report.check(
                        "conditioned count = vertex covers of gadget graph",
                        || format!("{} | d = {d} | l = {ell:?}", dump(&g)),
                        brute,
                        conditioned_vc(&g, &part, &ell)?,
                    );
                }
            }
        }
    }
    Ok(())
}

fn random_matrix(rng: &mut ChaCha8Rng, size: usize) -> Matrix {
    Matrix::from_rows(
        (0..size)
            .map(|_| (0..size).map(|_| int(rng.gen_range(-5..=5))).collect())
            .collect(),
    )
    .expect("square rows")
}

fn kron_suite(rng: &mut ChaCha8Rng, report: &mut SuiteReport) -> Result<()> {
    for _ in 0..100 {
        let (na, nb) = (rng.gen_range(2..=3), rng.gen_range(2..=3));
        let a = random_matrix(rng, na);
        let b = random_matrix(rng, nb);
        report.check(
            "det(A ⊗ B) = det(A)^{n_b} det(B)^{n_a}",
            || format!("A = {a:?}, B = {b:?}"),
            true,
            kron_det_check(&a, &b)?,
        );
    }
    for d in 1..=2 {
        let det = build_vandermonde(d)?.matrix().determinant()?;
        report.check("Vandermonde factor is nonsingular", || format!("d = {d}"), true, !det.is_zero());
    }
    for blocks in 0..=2 {
        let factor = build_vandermonde(1)?;
        let side = factor.size();
        let rhs = KroneckerSystem::grid_points(side, blocks)
            .map(|l| (l, rng.gen_range(-50..=50).into()))
            .collect();
        let sys = KroneckerSystem { factor, blocks, rhs };
        let factorized = sys.solve()?;
        let dense = kronecker_solve_dense(&sys)?;
        report.check(
            "mode-by-mode solve = dense Kronecker solve",
            || format!("d = 1, b = {blocks}"),
            true,
            factorized.values == dense && sys.residual_is_zero(&factorized)?,
        );
    }
    Ok(())
}

fn csp_suite(rng: &mut ChaCha8Rng, report: &mut SuiteReport) -> Result<()> {
    let budget = OracleBudget::default();
    for _ in 0..100 {
        let n = rng.gen_range(1..=12);
        let m = rng.gen_range(0..=10);
        let inst = random_affine_instance(rng, n, m);
        report.check(
            "elimination count = enumeration count",
            || serde_json::to_string(&crate::csp::CspJson::from_instance(&inst)).unwrap_or_default(),
            count_bruteforce(&inst)?,
            count_affine(&inst)?,
        );
    }
    for _ in 0..50 {
        let left = rng.gen_range(1..=6);
        let right = rng.gen_range(1..=6);
        let g = random_bipartite(rng, left, right, 0.4);
        let side: Vec<bool> = (0..left + right).map(|v| v < left).collect();
        report.check(
            "implication models = independent sets",
            || dump(&g),
            is_bruteforce(&g, &budget)?,
            count_bruteforce(&imp2sat_from_bipartite(&g, &side)?)?,
        );
    }
    for _ in 0..50 {
        let n = rng.gen_range(1..=12);
        let m = rng.gen_range(0..=n * (n - 1) / 2);
        let g = random_simple_graph(rng, n, m);
        report.check(
            "monotone 2-SAT models = vertex covers",
            || dump(&g),
            vc_bruteforce(&g, &budget)?,
            count_bruteforce(&pos2sat_from_graph(&g)?)?,
        );
    }
    for k in 0..=3usize {
        let sets = affine_sets_exhaustive(k);
        let points = 1u32 << k;
        for mask in 0u64..1 << points {
            let r = BooleanRelation::new(k, (0..points).filter(|x| mask >> x & 1 == 1))?;
            report.check(
                "closure test = exhaustive linear-system search",
                || format!("arity {k}, tuples {:?}", r.to_bitstrings()),
                sets.contains(&mask),
                is_affine(&r),
            );
        }
    }
    Ok(())
}
