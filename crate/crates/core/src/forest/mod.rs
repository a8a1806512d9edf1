//! Forest polynomials, the Tutte bridge at `y = 1`, and the apex identity.
//!
//! `F(G; w) = Σ_{A acyclic} Π_{e ∈ A} w_e`, with every parallel copy counted
//! as its own edge.

mod enumerate;
mod series_parallel;

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Multigraph, Weight, WeightAssignment};
use crate::polynomial::SparsePolynomial;
use crate::rational::{pow, to_integer, Rational};

pub use series_parallel::{forest_value_sp, forest_value_sp_sweep, reduce, ReducedCore};

pub(crate) use enumerate::{for_each_forest, forest_value};

/// Default enumeration guard on the number of edge copies (~4M subsets).
pub const DEFAULT_EDGE_GUARD: u64 = 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestPolyResult {
    pub poly: SparsePolynomial,
    /// Number of forests, i.e. the value at all-ones.
    pub forest_count: BigUint,
    /// Largest number of edges in a forest.
    pub max_forest_size: usize,
}

fn guard_check(g: &Multigraph, guard: u64) -> Result<()> {
    let m = g.total_edge_count();
    if m > guard {
        return Err(Error::Budget {
            what: "edge count for forest enumeration (use the series-parallel evaluator)",
            size: m,
            limit: guard,
        });
    }
    Ok(())
}

/// Symbolic forest polynomial by subset enumeration, over the distinct
/// symbols of `w` (numeric weights fold into coefficients).
pub fn forest_poly_bruteforce(g: &Multigraph, w: &WeightAssignment) -> Result<ForestPolyResult> {
    forest_poly_bruteforce_guarded(g, w, DEFAULT_EDGE_GUARD)
}

pub fn forest_poly_bruteforce_guarded(
    g: &Multigraph,
    w: &WeightAssignment,
    guard: u64,
) -> Result<ForestPolyResult> {
    guard_check(g, guard)?;
    w.check_against(g)?;
    let mut vars: Vec<String> = Vec::new();
    for weight in w.as_slice() {
        if let Weight::Symbol(s) = weight {
            if !vars.iter().any(|v| v == s.as_str()) {
                vars.push(s.to_string());
            }
        }
    }
    // per copy: variable slot or numeric factor
    let mut slot: Vec<Result<usize, Rational>> = Vec::new();
    let mut copies = Vec::new();
    for (e, weight) in g.edges().iter().zip(w.as_slice()) {
        let s = match weight {
            Weight::Symbol(name) => Ok(vars.iter().position(|v| v == name.as_str()).unwrap()),
            Weight::Value(r) => Err(r.clone()),
        };
        for _ in 0..e.mult {
            copies.push((e.u, e.v));
            slot.push(s.clone());
        }
    }
    let mut acc: HashMap<Vec<u32>, Rational> = HashMap::new();
    let mut count = BigUint::zero();
    let mut max_size = 0;
    for_each_forest(g.vertex_count(), &copies, |chosen, _| {
        count += 1u32;
        max_size = max_size.max(chosen.len());
        let mut exps = vec![0u32; vars.len()];
        let mut coeff: Option<Rational> = None;
        for &c in chosen {
            match &slot[c] {
                Ok(i) => exps[*i] += 1,
                Err(r) => {
                    coeff = Some(match coeff.take() {
                        Some(x) => x * r,
                        None => r.clone(),
                    })
                }
            }
        }
        let entry = acc.entry(exps).or_insert_with(Rational::zero);
        match coeff {
            Some(c) => *entry += c,
            None => *entry += Rational::one(),
        }
    });
    let poly = SparsePolynomial::from_terms(vars, acc)?;
    Ok(ForestPolyResult {
        poly,
        forest_count: count,
        max_forest_size: max_size,
    })
}

/// Numeric `F(g; w)` by plain enumeration; `weights` has one entry per record.
pub fn forest_value_bruteforce(g: &Multigraph, weights: &[Rational], guard: u64) -> Result<Rational> {
    guard_check(g, guard)?;
    if weights.len() != g.edge_count() {
        return Err(Error::InvalidArgument("one weight per edge record required".into()));
    }
    let mut copies = Vec::new();
    let mut per_copy = Vec::new();
    for (e, w) in g.edges().iter().zip(weights) {
        for _ in 0..e.mult {
            copies.push((e.u, e.v));
            per_copy.push(w.clone());
        }
    }
    Ok(forest_value(g.vertex_count(), &copies, &per_copy))
}

/// `F(g; w)` for a rational assignment via the series–parallel engine.
pub fn forest_poly_sp(g: &Multigraph, w: &WeightAssignment) -> Result<Rational> {
    w.check_against(g)?;
    forest_value_sp(g, &w.rational_values()?, DEFAULT_EDGE_GUARD)
}

/// `(w+1)^k − w^k`, the per-edge factor of a `k`-stretch.
pub fn stretch_prefactor(w: &Rational, k: u32) -> Rational {
    pow(&(w + Rational::one()), k as usize) - pow(w, k as usize)
}

/// `g_k(w) = w^k / ((w+1)^k − w^k)`.
pub fn g_k(w: &Rational, k: u32) -> Result<Rational> {
    if k == 0 {
        return Err(Error::InvalidArgument("stretch factor must be at least 1".into()));
    }
    let den = stretch_prefactor(w, k);
    if den.is_zero() {
        return Err(Error::Domain(format!(
            "g_{k}({w}) is undefined: (w+1)^{k} - w^{k} vanishes"
        )));
    }
    Ok(pow(w, k as usize) / den)
}

/// `T(G; x, 1) = (x−1)^{|V| − k(E)} · F(G; 1/(x−1))`.
pub fn tutte_y1(g: &Multigraph, x: &Rational) -> Result<Rational> {
    let shift = x - Rational::one();
    if shift.is_zero() {
        return Err(Error::Domain(
            "x = 1 is excluded: the forest bridge divides by x - 1".into(),
        ));
    }
    let t = shift.recip();
    let weights = vec![t; g.edge_count()];
    let f = forest_value_sp_sweep(g, &weights, DEFAULT_EDGE_GUARD, &crate::oracles::OracleBudget::default())?;
    let rank = g.vertex_count() - g.component_count();
    Ok(pow(&shift, rank) * f)
}

/// Right-hand side of the apex identity as a polynomial in `w`:
/// `Σ_A w^{|A|} Π_{T ∈ c(A)} (1 + Σ_{v∈T} z_v)`, singleton trees included.
pub fn apex_rhs_polynomial(g: &Multigraph, zvals: &[Rational]) -> Result<SparsePolynomial> {
    guard_check(g, DEFAULT_EDGE_GUARD)?;
    let n = g.vertex_count();
    if zvals.len() != n {
        return Err(Error::InvalidArgument(format!(
            "{} apex weights given for {n} vertices",
            zvals.len()
        )));
    }
    let copies = g.edge_copies();
    let mut by_size: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut tree_sum = vec![Rational::zero(); n];
    for_each_forest(n, &copies, |chosen, uf| {
        for s in tree_sum.iter_mut() {
            *s = Rational::one();
        }
        let mut roots = Vec::with_capacity(n);
        for (v, z) in zvals.iter().enumerate() {
            let r = uf.find(v);
            if r == v {
                roots.push(r);
            }
            tree_sum[r] += z;
        }
        let product: Rational = roots.iter().map(|&r| tree_sum[r].clone()).product();
        *by_size.entry(chosen.len()).or_insert_with(Rational::zero) += product;
    });
    let mut poly = SparsePolynomial::zero(vec!["w".to_string()]);
    for (k, c) in by_size {
        poly.add_term(vec![k as u32], c);
    }
    Ok(poly)
}

pub fn apex_rhs(g: &Multigraph, wval: &Rational, zvals: &[Rational]) -> Result<Rational> {
    let poly = apex_rhs_polynomial(g, zvals)?;
    poly.eval(&BTreeMap::from([("w".to_string(), wval.clone())]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PmExtraction {
    pub count: BigInt,
    /// Set when `n` is odd; the count is then 0 without inspecting the polynomial.
    pub odd_vertex_count: bool,
}

/// `(−1)^{n/2} · [w^{n/2}]` of the apex polynomial at `z = −1`.
///
/// Each tree of a perfect matching contributes `1 − |T| = −1`, hence the sign.
pub fn pm_coefficient_extract(apex_poly: &SparsePolynomial, n: usize) -> Result<PmExtraction> {
    if n % 2 == 1 {
        return Ok(PmExtraction {
            count: BigInt::zero(),
            odd_vertex_count: true,
        });
    }
    let var = apex_poly
        .var_index("w")
        .or_else(|| (apex_poly.vars().len() == 1).then_some(0));
    let half = (n / 2) as u32;
    let coeff = match var {
        Some(i) => {
            if apex_poly.terms().keys().any(|e| e.iter().enumerate().any(|(j, &k)| j != i && k > 0)) {
                return Err(Error::InvalidArgument(
                    "apex polynomial must depend on w only (set z = -1 first)".into(),
                ));
            }
            let mut exps = vec![0; apex_poly.vars().len()];
            exps[i] = half;
            apex_poly.coefficient(&exps)
        }
        None if apex_poly.vars().is_empty() && half == 0 => apex_poly.constant_term(),
        None if apex_poly.vars().is_empty() => Rational::zero(),
        None => {
            return Err(Error::InvalidArgument(
                "apex polynomial must be univariate in w".into(),
            ))
        }
    };
    let signed = if half % 2 == 1 { -coeff } else { coeff };
    let count = to_integer(&signed).ok_or_else(|| {
        Error::Inconsistent(format!("perfect-matching coefficient {signed} is not an integer"))
    })?;
    Ok(PmExtraction {
        count,
        odd_vertex_count: false,
    })
}

#[cfg(test)]
mod tests;
