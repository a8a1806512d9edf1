//! Boolean constraint counting: affine detection, counting affine instances
//! by elimination over GF(2), the monotone / implicational 2-SAT encodings
//! of vertex covers and bipartite independent sets, and plain enumeration.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// Largest arity a relation may have (tuples are stored as bitmasks).
pub const MAX_ARITY: usize = 24;

/// Largest variable count [`count_bruteforce`] enumerates.
pub const BRUTEFORCE_VARIABLES: usize = 24;

/// A relation `R ⊆ {0,1}^k`. Bit `i` of a tuple is its `i`-th coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BooleanRelation {
    arity: usize,
    tuples: BTreeSet<u32>,
}

impl BooleanRelation {
    pub fn new(arity: usize, tuples: impl IntoIterator<Item = u32>) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::InvalidArgument(format!(
                "arity {arity} exceeds the limit of {MAX_ARITY}"
            )));
        }
        let tuples: BTreeSet<u32> = tuples.into_iter().collect();
        if let Some(t) = tuples.iter().find(|&&t| arity < 32 && t >> arity != 0) {
            return Err(Error::InvalidArgument(format!("tuple {t:#b} is longer than arity {arity}")));
        }
        Ok(BooleanRelation { arity, tuples })
    }

    /// Tuples written as bit strings, first coordinate first: `["01", "10"]`.
    pub fn from_bitstrings<S: AsRef<str>>(arity: usize, tuples: &[S]) -> Result<Self> {
        let parsed = tuples
            .iter()
            .map(|s| {
                let s = s.as_ref();
                if s.len() != arity {
                    return Err(Error::InvalidArgument(format!(
                        "tuple `{s}` does not have length {arity}"
                    )));
                }
                s.chars().enumerate().try_fold(0u32, |acc, (i, c)| match c {
                    '0' => Ok(acc),
                    '1' => Ok(acc | 1 << i),
                    _ => Err(Error::InvalidArgument(format!("tuple `{s}` is not a bit string"))),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(arity, parsed)
    }

    /// Bit strings in lexicographic order.
    pub fn to_bitstrings(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .tuples
            .iter()
            .map(|t| (0..self.arity).map(|i| if t >> i & 1 == 1 { '1' } else { '0' }).collect())
            .collect();
        out.sort();
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tuples(&self) -> &BTreeSet<u32> {
        &self.tuples
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, tuple: u32) -> bool {
        self.tuples.contains(&tuple)
    }

    /// `x1 ⊕ … ⊕ xk = parity`
    pub fn parity(arity: usize, parity: bool) -> Self {
        let tuples = (0u32..1 << arity).filter(|t| (t.count_ones() % 2 == 1) == parity);
        Self::new(arity, tuples).expect("arity within limits")
    }

    /// `x ∨ y`
    pub fn or2() -> Self {
        Self::from_bitstrings(2, &["01", "10", "11"]).unwrap()
    }

    /// `x → y`
    pub fn implies() -> Self {
        Self::from_bitstrings(2, &["00", "01", "11"]).unwrap()
    }

    /// Unary constant relation `x = value`.
    pub fn constant(value: bool) -> Self {
        Self::new(1, [value as u32]).unwrap()
    }

    /// Linear equations `(mask, rhs)` with solution set `self`, meaning
    /// `⊕_{i ∈ mask} x_i = rhs`; `None` if the relation is not affine.
    pub fn equations(&self) -> Option<Vec<(u32, bool)>> {
        if !is_affine(self) {
            return None;
        }
        let Some(&a0) = self.tuples.iter().next() else {
            // unsatisfiable: 0 = 1
            return Some(vec![(0, true)]);
        };
        let basis = gf2_reduce(self.tuples.iter().map(|t| t ^ a0).collect());
        let pivots: Vec<u32> = basis.iter().map(|r| r.trailing_zeros()).collect();
        let mut eqs = Vec::new();
        for free in 0..self.arity as u32 {
            if pivots.contains(&free) {
                continue;
            }
            let mut c = 1u32 << free;
            for (row, &p) in basis.iter().zip(&pivots) {
                if row >> free & 1 == 1 {
                    c |= 1 << p;
                }
            }
            eqs.push((c, (c & a0).count_ones() % 2 == 1));
        }
        Some(eqs)
    }
}

/// Reduced row echelon form of GF(2) row vectors; pivots are lowest bits.
fn gf2_reduce(rows: Vec<u32>) -> Vec<u32> {
    let mut basis: Vec<u32> = Vec::new();
    for mut r in rows {
        for b in &basis {
            if r >> b.trailing_zeros() & 1 == 1 {
                r ^= b;
            }
        }
        if r == 0 {
            continue;
        }
        let p = r.trailing_zeros();
        for b in basis.iter_mut() {
            if *b >> p & 1 == 1 {
                *b ^= r;
            }
        }
        basis.push(r);
    }
    basis
}

/// Closure under coordinatewise `a ⊕ b ⊕ c`; the empty relation counts.
pub fn is_affine(r: &BooleanRelation) -> bool {
    let t: Vec<u32> = r.tuples.iter().copied().collect();
    // fixing a = t[0] suffices: R is affine iff R ⊕ a is a subspace
    let Some(&a) = t.first() else {
        return true;
    };
    t.iter().all(|b| t.iter().all(|c| r.contains(a ^ b ^ c)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub relation: usize,
    pub vars: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CspInstance {
    pub n: usize,
    pub relations: Vec<BooleanRelation>,
    pub constraints: Vec<Constraint>,
}

impl CspInstance {
    pub fn new(n: usize, relations: Vec<BooleanRelation>, constraints: Vec<Constraint>) -> Result<Self> {
        for (i, c) in constraints.iter().enumerate() {
            let r = relations.get(c.relation).ok_or_else(|| {
                Error::InvalidArgument(format!("constraint {i} uses unknown relation {}", c.relation))
            })?;
            if c.vars.len() != r.arity() {
                return Err(Error::InvalidArgument(format!(
                    "constraint {i} has {} variables for a relation of arity {}",
                    c.vars.len(),
                    r.arity()
                )));
            }
            if let Some(v) = c.vars.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidArgument(format!(
                    "constraint {i} uses variable {v} but n = {n}"
                )));
            }
        }
        Ok(CspInstance {
            n,
            relations,
            constraints,
        })
    }

    fn tuple_of(c: &Constraint, assignment: &[u64]) -> u32 {
        c.vars
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &v)| acc | (((assignment[v / 64] >> (v % 64)) & 1) as u32) << i)
    }

    /// True if the 0/1 assignment (bit `v` of the mask) satisfies everything.
    pub fn satisfied_by(&self, assignment: u64) -> bool {
        self.constraints
            .iter()
            .all(|c| self.relations[c.relation].contains(Self::tuple_of(c, &[assignment])))
    }
}

/// Models of an instance whose relations are all affine: `2^{n − rank}` or 0.
pub fn count_affine(inst: &CspInstance) -> Result<BigUint> {
    let words = inst.n.div_ceil(64);
    let mut rows: Vec<(Vec<u64>, bool)> = Vec::new();
    let mut eq_cache: Vec<Option<Vec<(u32, bool)>>> = vec![None; inst.relations.len()];
    for c in &inst.constraints {
        if eq_cache[c.relation].is_none() {
            let eqs = inst.relations[c.relation].equations().ok_or_else(|| {
                Error::InvalidArgument(format!("relation {} is not affine", c.relation))
            })?;
            eq_cache[c.relation] = Some(eqs);
        }
        for &(mask, rhs) in eq_cache[c.relation].as_ref().unwrap() {
            let mut row = vec![0u64; words];
            for (i, &v) in c.vars.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    row[v / 64] ^= 1 << (v % 64);
                }
            }
            rows.push((row, rhs));
        }
    }
    let mut rank = 0;
    for col in 0..inst.n {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].0[w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.0[w] & bit != 0 {
                row.0.iter_mut().zip(&pivot.0).for_each(|(a, b)| *a ^= b);
                row.1 ^= pivot.1;
            }
        }
        rank += 1;
    }
    if rows[rank..].iter().any(|(_, rhs)| *rhs) {
        return Ok(BigUint::zero());
    }
    Ok(BigUint::one() << (inst.n - rank))
}

/// Models by enumerating all `2^n` assignments.
pub fn count_bruteforce(inst: &CspInstance) -> Result<BigUint> {
    if inst.n > BRUTEFORCE_VARIABLES {
        return Err(Error::Budget {
            what: "variable count for assignment enumeration",
            size: inst.n as u64,
            limit: BRUTEFORCE_VARIABLES as u64,
        });
    }
    let count = (0u64..1 << inst.n).filter(|&a| inst.satisfied_by(a)).count();
    Ok(BigUint::from(count))
}

/// `#Imp2Sat` encoding of independent sets in a bipartite graph. `side[v]`
/// puts `v` in `V`; for an edge `{v, u}` with `v ∈ V` the clause is
/// `x_v → x_u`, where `x_v` means "v is in the set" on `V` and "u is not in
/// the set" on the other side.
pub fn imp2sat_from_bipartite(g: &Multigraph, side: &[bool]) -> Result<CspInstance> {
    g.ensure_simple("imp2sat_from_bipartite")?;
    if side.len() != g.vertex_count() {
        return Err(Error::InvalidArgument("side labeling has the wrong length".into()));
    }
    let mut constraints = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        let (v, u) = match (side[e.u], side[e.v]) {
            (true, false) => (e.u, e.v),
            (false, true) => (e.v, e.u),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "edge {{{}, {}}} does not cross the bipartition",
                    e.u, e.v
                )))
            }
        };
        constraints.push(Constraint {
            relation: 0,
            vars: vec![v, u],
        });
    }
    CspInstance::new(g.vertex_count(), vec![BooleanRelation::implies()], constraints)
}

/// Same as [`imp2sat_from_bipartite`] with the side labeling found by
/// two-colouring.
pub fn imp2sat_auto(g: &Multigraph) -> Result<CspInstance> {
    let side = g
        .bipartition()
        .ok_or_else(|| Error::InvalidArgument("graph is not bipartite".into()))?;
    imp2sat_from_bipartite(g, &side)
}

/// `#Pos2Sat` encoding: one clause `x_u ∨ x_v` per edge; models are vertex
/// covers.
pub fn pos2sat_from_graph(g: &Multigraph) -> Result<CspInstance> {
    let constraints = g
        .edges()
        .iter()
        .map(|e| Constraint {
            relation: 0,
            vars: vec![e.u, e.v],
        })
        .collect();
    CspInstance::new(g.vertex_count(), vec![BooleanRelation::or2()], constraints)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    AllAffine,
    ContainsNonAffine {
        /// Index of the first non-affine relation.
        witness: usize,
        relation: BooleanRelation,
        /// Arity of the largest non-affine relation, reported as a proxy for
        /// the constant in the instance-size blow-up.
        size_constant: usize,
    },
}

pub fn classify(gamma: &[BooleanRelation]) -> Classification {
    let non_affine: Vec<usize> = (0..gamma.len()).filter(|&i| !is_affine(&gamma[i])).collect();
    match non_affine.first() {
        None => Classification::AllAffine,
        Some(&w) => Classification::ContainsNonAffine {
            witness: w,
            relation: gamma[w].clone(),
            size_constant: non_affine.iter().map(|&i| gamma[i].arity()).max().unwrap(),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub arity: usize,
    pub tuples: Vec<String>,
}

/// `{"relations": [...], "n": 3, "constraints": [[0, [0, 1]], ...]}`.
/// `n` and `constraints` may be omitted when only the language matters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CspJson {
    pub relations: Vec<RelationJson>,
    #[serde(default)]
    pub n: usize,
    #[serde(default)]
    pub constraints: Vec<(usize, Vec<usize>)>,
}

impl CspJson {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn relations(&self) -> Result<Vec<BooleanRelation>> {
        self.relations
            .iter()
            .map(|r| BooleanRelation::from_bitstrings(r.arity, &r.tuples))
            .collect()
    }

    pub fn instance(&self) -> Result<CspInstance> {
        let constraints = self
            .constraints
            .iter()
            .map(|(relation, vars)| Constraint {
                relation: *relation,
                vars: vars.clone(),
            })
            .collect();
        CspInstance::new(self.n, self.relations()?, constraints)
    }

    pub fn from_instance(inst: &CspInstance) -> Self {
        CspJson {
            relations: inst
                .relations
                .iter()
                .map(|r| RelationJson {
                    arity: r.arity(),
                    tuples: r.to_bitstrings(),
                })
                .collect(),
            n: inst.n,
            constraints: inst.constraints.iter().map(|c| (c.relation, c.vars.clone())).collect(),
        }
    }
}

/// Every solution set of a linear system over `k ≤ 3` variables, as a
/// bitmask over the `2^k` points; found by trying every set of equations.
pub fn affine_sets_exhaustive(k: usize) -> BTreeSet<u64> {
    assert!(k <= 3, "exhaustive search only for arity <= 3");
    let points = 1u32 << k;
    let equations: Vec<(u32, bool)> = (0..points).flat_map(|c| [(c, false), (c, true)]).collect();
    let mut sets = BTreeSet::new();
    for chosen in 0u32..1 << equations.len() {
        let mut sol = 0u64;
        for x in 0..points {
            let ok = equations
                .iter()
                .enumerate()
                .filter(|(i, _)| chosen >> i & 1 == 1)
                .all(|(_, &(c, b))| ((c & x).count_ones() % 2 == 1) == b);
            if ok {
                sol |= 1 << x;
            }
        }
        sets.insert(sol);
    }
    sets
}
