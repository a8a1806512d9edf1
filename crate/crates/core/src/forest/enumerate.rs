//! Depth-first enumeration of acyclic edge subsets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::rational::Rational;
use crate::unionfind::RollbackUnionFind;

/// Calls `visit` once per forest of the graph on `n` vertices whose edges are
/// `copies`, passing the chosen copy indices and the union–find state.
pub(crate) fn for_each_forest<F>(n: usize, copies: &[(usize, usize)], mut visit: F)
where
    F: FnMut(&[usize], &RollbackUnionFind),
{
    let mut uf = RollbackUnionFind::new(n);
    let mut chosen = Vec::with_capacity(n);
    walk(0, copies, &mut uf, &mut chosen, &mut visit);
}

fn walk<F>(
    i: usize,
    copies: &[(usize, usize)],
    uf: &mut RollbackUnionFind,
    chosen: &mut Vec<usize>,
    visit: &mut F,
) where
    F: FnMut(&[usize], &RollbackUnionFind),
{
    if i == copies.len() {
        visit(chosen, uf);
        return;
    }
    walk(i + 1, copies, uf, chosen, visit);
    let (u, v) = copies[i];
    if uf.union(u, v) {
        chosen.push(i);
        walk(i + 1, copies, uf, chosen, visit);
        chosen.pop();
        uf.undo();
    }
}

/// `Σ_forests Π weight` for numeric per-copy weights.
///
/// Weights are brought to a common denominator `D`, so the enumeration only
/// sums integer products per forest size `k`; the result is `Σ_k S_k / D^k`.
/// Machine integers are used until an operation would overflow.
pub(crate) fn forest_value(n: usize, copies: &[(usize, usize)], weights: &[Rational]) -> Rational {
    debug_assert_eq!(copies.len(), weights.len());
    let denom = weights
        .iter()
        .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let numers: Vec<BigInt> = weights
        .iter()
        .map(|w| w.numer() * (&denom / w.denom()))
        .collect();
    let sums = match numers.iter().map(ToPrimitive::to_i128).collect::<Option<Vec<i128>>>() {
        Some(small) => sums_i128(n, copies, &small)
            .unwrap_or_else(|| sums_big(n, copies, &numers)),
        None => sums_big(n, copies, &numers),
    };
    let denom = Rational::from_integer(denom);
    let mut total = Rational::zero();
    let mut scale = Rational::one();
    for s in sums {
        total += Rational::from_integer(s) / &scale;
        scale *= &denom;
    }
    total
}

fn sums_i128(n: usize, copies: &[(usize, usize)], numers: &[i128]) -> Option<Vec<BigInt>> {
    struct State<'a> {
        copies: &'a [(usize, usize)],
        numers: &'a [i128],
        uf: RollbackUnionFind,
        sums: Vec<i128>,
        overflow: bool,
    }
    fn go(st: &mut State<'_>, i: usize, depth: usize, prod: i128) {
        if st.overflow {
            return;
        }
        if i == st.copies.len() {
            match st.sums[depth].checked_add(prod) {
                Some(s) => st.sums[depth] = s,
                None => st.overflow = true,
            }
            return;
        }
        go(st, i + 1, depth, prod);
        let a = st.numers[i];
        if a == 0 {
            return;
        }
        let (u, v) = st.copies[i];
        if st.uf.union(u, v) {
            match prod.checked_mul(a) {
                Some(p) => go(st, i + 1, depth + 1, p),
                None => st.overflow = true,
            }
            st.uf.undo();
        }
    }
    let mut st = State {
        copies,
        numers,
        uf: RollbackUnionFind::new(n),
        sums: vec![0; n.max(1)],
        overflow: false,
    };
    go(&mut st, 0, 0, 1);
    (!st.overflow).then(|| st.sums.into_iter().map(BigInt::from).collect())
}

fn sums_big(n: usize, copies: &[(usize, usize)], numers: &[BigInt]) -> Vec<BigInt> {
    fn go(
        copies: &[(usize, usize)],
        numers: &[BigInt],
        uf: &mut RollbackUnionFind,
        sums: &mut [BigInt],
        i: usize,
        depth: usize,
        prod: &BigInt,
    ) {
        if i == copies.len() {
            sums[depth] += prod;
            return;
        }
        go(copies, numers, uf, sums, i + 1, depth, prod);
        if numers[i].is_zero() {
            return;
        }
        let (u, v) = copies[i];
        if uf.union(u, v) {
            let next = prod * &numers[i];
            go(copies, numers, uf, sums, i + 1, depth + 1, &next);
            uf.undo();
        }
    }
    let mut sums = vec![BigInt::zero(); n.max(1)];
    let mut uf = RollbackUnionFind::new(n);
    go(copies, numers, &mut uf, &mut sums, 0, 0, &BigInt::one());
    sums
}
