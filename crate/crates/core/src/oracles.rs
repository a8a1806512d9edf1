//! Ground-truth counters. Each is a direct enumeration with an explicit size
//! budget, so misuse fails with [`Error::Budget`] instead of running for hours.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::rational::{pow, Rational};
use crate::unionfind::UnionFind;

/// Size limits per oracle kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub pm_vertices: usize,
    pub is_vertices: usize,
    pub forest_edges: u64,
    /// Limit on the smaller colour class for [`vc_bipartite`].
    pub bipartite_side: usize,
    pub tutte_edges: u64,
    /// Limit on simultaneously open vertices for [`forest_value_frontier`].
    pub frontier_width: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            pm_vertices: 16,
            is_vertices: 25,
            forest_edges: 22,
            bipartite_side: 24,
            tutte_edges: 20,
            frontier_width: 12,
        }
    }
}

fn over(what: &'static str, size: u64, limit: u64) -> Result<()> {
    if size > limit {
        Err(Error::Budget { what, size, limit })
    } else {
        Ok(())
    }
}

/// Perfect matchings by always matching the lowest unmatched vertex. Parallel
/// copies count as distinct edges.
pub fn pm_bruteforce(g: &Multigraph, budget: &OracleBudget) -> Result<BigUint> {
    let n = g.vertex_count();
    over("vertex count for perfect-matching enumeration", n as u64, budget.pm_vertices as u64)?;
    if n % 2 == 1 {
        return Ok(BigUint::zero());
    }
    let mut mult = vec![vec![0u64; n]; n];
    for e in g.edges() {
        mult[e.u][e.v] += u64::from(e.mult);
        mult[e.v][e.u] += u64::from(e.mult);
    }
    fn go(mult: &[Vec<u64>], unmatched: u32) -> BigUint {
        if unmatched == 0 {
            return BigUint::one();
        }
        let v = unmatched.trailing_zeros() as usize;
        let rest = unmatched & !(1 << v);
        let mut total = BigUint::zero();
        let mut others = rest;
        while others != 0 {
            let u = others.trailing_zeros() as usize;
            others &= others - 1;
            if mult[v][u] > 0 {
                total += go(mult, rest & !(1 << u)) * mult[v][u];
            }
        }
        total
    }
    let all = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    Ok(go(&mult, all))
}

fn subset_count(g: &Multigraph, budget: &OracleBudget, independent: bool) -> Result<BigUint> {
    let n = g.vertex_count();
    over("vertex count for subset enumeration", n as u64, budget.is_vertices as u64)?;
    let adj = g.adjacency_masks();
    let mut count: u64 = 0;
    for s in 0u64..(1u64 << n) {
        // an independent set's complement is a vertex cover, and vice versa
        let candidate = if independent { s } else { !s & ((1u64 << n) - 1) };
        let mut rest = candidate;
        let mut ok = true;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if adj[v] & candidate != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// Independent sets by enumerating all `2^n` vertex subsets.
pub fn is_bruteforce(g: &Multigraph, budget: &OracleBudget) -> Result<BigUint> {
    subset_count(g, budget, true)
}

/// Vertex covers by enumerating all `2^n` vertex subsets.
pub fn vc_bruteforce(g: &Multigraph, budget: &OracleBudget) -> Result<BigUint> {
    let n = g.vertex_count();
    over("vertex count for subset enumeration", n as u64, budget.is_vertices as u64)?;
    let copies = g.edge_copies();
    let mut count: u64 = 0;
    for s in 0u64..(1u64 << n) {
        if copies.iter().all(|&(u, v)| (s >> u | s >> v) & 1 == 1) {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// Vertex covers of a bipartite graph: enumerate which vertices of the smaller
/// colour class are left out; their neighbours are then forced into the cover
/// and the rest of the other class is free.
pub fn vc_bipartite(g: &Multigraph, budget: &OracleBudget) -> Result<BigUint> {
    let side = g
        .bipartition()
        .ok_or_else(|| Error::InvalidArgument("graph is not bipartite".into()))?;
    let left_is_true = side.iter().filter(|&&s| s).count() * 2 <= side.len();
    let small: Vec<usize> = (0..side.len()).filter(|&v| side[v] == left_is_true).collect();
    let large: Vec<usize> = (0..side.len()).filter(|&v| side[v] != left_is_true).collect();
    over("smaller colour class for bipartite enumeration", small.len() as u64, budget.bipartite_side as u64)?;
    let mut pos = vec![usize::MAX; side.len()];
    for (i, &v) in large.iter().enumerate() {
        pos[v] = i;
    }
    let words = large.len().div_ceil(64).max(1);
    let mut nbr: Vec<Vec<u64>> = vec![vec![0; words]; small.len()];
    let mut small_pos = vec![usize::MAX; side.len()];
    for (i, &v) in small.iter().enumerate() {
        small_pos[v] = i;
    }
    for e in g.edges() {
        let (s, l) = if small_pos[e.u] != usize::MAX { (e.u, e.v) } else { (e.v, e.u) };
        let p = pos[l];
        nbr[small_pos[s]][p / 64] |= 1 << (p % 64);
    }
    let mut total = BigUint::zero();
    let mut forced = vec![0u64; words];
    for excluded in 0u64..(1u64 << small.len()) {
        forced.iter_mut().for_each(|w| *w = 0);
        let mut rest = excluded;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            for (f, n) in forced.iter_mut().zip(&nbr[i]) {
                *f |= n;
            }
        }
        let forced_count: u32 = forced.iter().map(|w| w.count_ones()).sum();
        total += BigUint::one() << (large.len() - forced_count as usize);
    }
    Ok(total)
}

/// Acyclic edge subsets, each parallel copy counted separately.
pub fn forests_bruteforce(g: &Multigraph, budget: &OracleBudget) -> Result<BigUint> {
    let copies = g.edge_copies();
    over("edge count for forest enumeration", copies.len() as u64, budget.forest_edges)?;
    let mut count: u64 = 0;
    for mask in 0u64..(1u64 << copies.len()) {
        let mut uf = UnionFind::new(g.vertex_count());
        let acyclic = copies
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .all(|(_, &(u, v))| uf.union(u, v));
        if acyclic {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// `T(G; x, y) = Σ_A (x−1)^{k(A)−k(E)} (y−1)^{k(A)+|A|−|V|}` summed over all
/// edge subsets, with `0^0 = 1`.
pub fn tutte_bruteforce(g: &Multigraph, x: &Rational, y: &Rational, budget: &OracleBudget) -> Result<Rational> {
    let copies = g.edge_copies();
    over("edge count for Tutte enumeration", copies.len() as u64, budget.tutte_edges)?;
    let n = g.vertex_count() as i64;
    let k_full = g.component_count() as i64;
    let xs = x - Rational::one();
    let ys = y - Rational::one();
    let mut total = Rational::zero();
    for mask in 0u64..(1u64 << copies.len()) {
        let mut uf = UnionFind::new(g.vertex_count());
        let mut size = 0i64;
        for (i, &(u, v)) in copies.iter().enumerate() {
            if mask >> i & 1 == 1 {
                uf.union(u, v);
                size += 1;
            }
        }
        let k = uf.set_count() as i64;
        let term = pow(&xs, (k - k_full) as usize) * pow(&ys, (k + size - n) as usize);
        total += term;
    }
    Ok(total)
}

/// `F(g; w)` by sweeping the edge copies in order while tracking, for every
/// way of choosing the edges seen so far, how the open vertices (those with
/// edges still to come) are joined. An edge closing a cycle is never taken.
/// Cost grows with the number of open vertices, not with the edge count.
pub fn forest_value_frontier(g: &Multigraph, weights: &[Rational], budget: &OracleBudget) -> Result<Rational> {
    if weights.len() != g.edge_count() {
        return Err(Error::InvalidArgument(format!(
            "{} weights for {} edge records",
            weights.len(),
            g.edge_count()
        )));
    }
    let copies: Vec<(usize, usize, &Rational)> = g
        .edges()
        .iter()
        .zip(weights)
        .flat_map(|(e, w)| std::iter::repeat_n((e.u, e.v, w), e.mult as usize))
        .collect();
    let mut last_use = vec![usize::MAX; g.vertex_count()];
    for (i, &(u, v, _)) in copies.iter().enumerate() {
        last_use[u] = i;
        last_use[v] = i;
    }
    // states map a component label per open vertex to the summed weight
    let mut open: Vec<usize> = Vec::new();
    let mut states: HashMap<Vec<u8>, Rational> = HashMap::from([(Vec::new(), Rational::one())]);
    for (i, &(u, v, w)) in copies.iter().enumerate() {
        for x in [u, v] {
            if !open.contains(&x) {
                open.push(x);
                over("open vertices for frontier sweep", open.len() as u64, budget.frontier_width as u64)?;
                let fresh = open.len() as u8;
                states = states
                    .into_iter()
                    .map(|(mut s, val)| {
                        s.push(fresh);
                        (s, val)
                    })
                    .collect();
            }
        }
        let pu = open.iter().position(|&x| x == u).unwrap();
        let pv = open.iter().position(|&x| x == v).unwrap();
        let mut next: HashMap<Vec<u8>, Rational> = HashMap::with_capacity(states.len() * 2);
        for (s, val) in states {
            if s[pu] != s[pv] {
                let (from, to) = (s[pv], s[pu]);
                let merged: Vec<u8> = s.iter().map(|&c| if c == from { to } else { c }).collect();
                *next.entry(merged).or_insert_with(Rational::zero) += &val * w;
            }
            *next.entry(s).or_insert_with(Rational::zero) += val;
        }
        let keep: Vec<bool> = open.iter().map(|&x| last_use[x] != i).collect();
        open.retain(|&x| last_use[x] != i);
        states = HashMap::with_capacity(next.len());
        for (s, val) in next {
            let kept: Vec<u8> = s.iter().zip(&keep).filter(|(_, k)| **k).map(|(c, _)| *c).collect();
            *states.entry(canonical_labels(&kept)).or_insert_with(Rational::zero) += val;
        }
    }
    Ok(states.into_values().sum())
}

/// Relabels components in order of first appearance.
fn canonical_labels(s: &[u8]) -> Vec<u8> {
    let mut map: Vec<(u8, u8)> = Vec::new();
    s.iter()
        .map(|&c| match map.iter().find(|(from, _)| *from == c) {
            Some(&(_, to)) => to,
            None => {
                let to = map.len() as u8;
                map.push((c, to));
                to
            }
        })
        .collect()
}

/// Signed version of a count, for comparisons with rational pipeline output.
pub fn as_bigint(v: &BigUint) -> BigInt {
    BigInt::from(v.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{random_bipartite, random_simple_graph};
    use crate::graph::{named_graph, Edge};
    use crate::rational::int;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn b() -> OracleBudget {
        OracleBudget::default()
    }

    fn g(name: &str) -> Multigraph {
        named_graph(name).unwrap()
    }

    #[test]
    fn frontier_sweep_matches_subset_enumeration() {
        use crate::forest::forest_value_bruteforce;
        use crate::generate::{random_multigraph, random_rational};
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..60 {
            let n = rng.gen_range(2..7);
            let records = rng.gen_range(0..9);
            let h = random_multigraph(&mut rng, n, records, 3);
            let w: Vec<_> = (0..h.edge_count()).map(|_| random_rational(&mut rng)).collect();
            assert_eq!(
                forest_value_frontier(&h, &w, &b()).unwrap(),
                forest_value_bruteforce(&h, &w, 22).unwrap()
            );
        }
        let k4 = g("k4");
        assert_eq!(forest_value_frontier(&k4, &vec![int(1); 6], &b()).unwrap(), int(38));
    }

    #[test]
    fn pm_examples() {
        assert_eq!(pm_bruteforce(&g("c4"), &b()).unwrap(), 2u32.into());
        assert_eq!(pm_bruteforce(&g("k4"), &b()).unwrap(), 3u32.into());
        assert_eq!(pm_bruteforce(&g("k3"), &b()).unwrap(), 0u32.into());
        assert_eq!(pm_bruteforce(&g("p4"), &b()).unwrap(), 1u32.into());
        assert_eq!(pm_bruteforce(&g("k33"), &b()).unwrap(), 6u32.into());
        assert_eq!(pm_bruteforce(&g("petersen"), &b()).unwrap(), 6u32.into());
        assert_eq!(pm_bruteforce(&Multigraph::empty(0), &b()).unwrap(), 1u32.into());
        let double = Multigraph::new(2, vec![Edge::new(0, 1).with_mult(2)]).unwrap();
        assert_eq!(pm_bruteforce(&double, &b()).unwrap(), 2u32.into());
        assert!(pm_bruteforce(&Multigraph::empty(18), &b()).unwrap_err().is_budget());
    }

    #[test]
    fn is_vc_examples() {
        for (name, expected) in [("k2", 3u32), ("c4", 7), ("k3", 4), ("p3", 5)] {
            assert_eq!(is_bruteforce(&g(name), &b()).unwrap(), expected.into(), "{name}");
            assert_eq!(vc_bruteforce(&g(name), &b()).unwrap(), expected.into(), "{name}");
        }
        let e3 = Multigraph::empty(3);
        assert_eq!(is_bruteforce(&e3, &b()).unwrap(), 8u32.into());
        assert_eq!(vc_bruteforce(&e3, &b()).unwrap(), 8u32.into());
    }

    #[test]
    fn is_equals_vc_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..9 {
            for m in 0..=(n * (n - 1) / 2).min(12) {
                let h = random_simple_graph(&mut rng, n, m);
                assert_eq!(is_bruteforce(&h, &b()).unwrap(), vc_bruteforce(&h, &b()).unwrap());
            }
        }
    }

    #[test]
    fn bipartite_counter_matches_subset_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let h = random_bipartite(&mut rng, 4, 6, 0.4);
            assert_eq!(vc_bipartite(&h, &b()).unwrap(), vc_bruteforce(&h, &b()).unwrap());
        }
        assert!(vc_bipartite(&g("k3"), &b()).is_err());
        assert_eq!(vc_bipartite(&Multigraph::empty(0), &b()).unwrap(), 1u32.into());
    }

    #[test]
    fn forest_examples() {
        assert_eq!(forests_bruteforce(&g("k3"), &b()).unwrap(), 7u32.into());
        assert_eq!(forests_bruteforce(&g("k4"), &b()).unwrap(), 38u32.into());
        let path = Multigraph::from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(forests_bruteforce(&path, &b()).unwrap(), 16u32.into());
    }

    #[test]
    fn tutte_examples() {
        // T(K3) = x^2 + x + y
        let t = tutte_bruteforce(&g("k3"), &int(2), &int(3), &b()).unwrap();
        assert_eq!(t, int(4 + 2 + 3));
        // T(K2) = x
        assert_eq!(tutte_bruteforce(&g("k2"), &int(5), &int(9), &b()).unwrap(), int(5));
        // T(G; 1, 1) counts spanning trees (forests for disconnected G)
        assert_eq!(tutte_bruteforce(&g("k4"), &int(1), &int(1), &b()).unwrap(), int(16));
    }
}
