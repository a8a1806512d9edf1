//! Seeded instance generators shared by the verification suites and tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::csp::{BooleanRelation, Constraint, CspInstance};
use crate::graph::{Edge, Multigraph};
use crate::rational::Rational;

/// Simple graph with `m` distinct edges on `n` vertices (`m` is capped at
/// `n(n-1)/2`).
pub fn random_simple_graph<R: Rng>(rng: &mut R, n: usize, m: usize) -> Multigraph {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    pairs.truncate(m);
    Multigraph::from_pairs(n, &pairs).expect("generated pairs are valid")
}

/// Multigraph with `records` edge records of multiplicity `1..=max_mult`;
/// records may repeat endpoint pairs.
pub fn random_multigraph<R: Rng>(rng: &mut R, n: usize, records: usize, max_mult: u32) -> Multigraph {
    assert!(n >= 2);
    let mut g = Multigraph::empty(n);
    for _ in 0..records {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        g.push_edge(Edge::new(u, v).with_mult(rng.gen_range(1..=max_mult)))
            .expect("generated edge is valid");
    }
    g
}

/// Random bipartite graph with sides `0..left` and `left..left+right`.
pub fn random_bipartite<R: Rng>(rng: &mut R, left: usize, right: usize, p: f64) -> Multigraph {
    let mut pairs = Vec::new();
    for u in 0..left {
        for v in left..left + right {
            if rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    Multigraph::from_pairs(left + right, &pairs).expect("generated pairs are valid")
}

/// Small rational `p/q` with `|p| <= 6`, `1 <= q <= 4`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=4).into())
}

/// Every simple graph on `n` labeled vertices, as edge subsets of `K_n`.
/// Only sensible for `n <= 5`.
pub fn all_simple_graphs(n: usize) -> Vec<Multigraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let chosen: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, p)| *p)
                .collect();
            Multigraph::from_pairs(n, &chosen).unwrap()
        })
        .collect()
}

/// Random instance over affine relations of arity `1..=4`, each the
/// solution set of a random linear system.
pub fn random_affine_instance<R: Rng>(rng: &mut R, n: usize, constraints: usize) -> CspInstance {
    let mut relations = Vec::new();
    let mut cons = Vec::new();
    if n == 0 {
        return CspInstance::new(0, relations, cons).expect("empty instance is valid");
    }
    for _ in 0..constraints {
        let arity = rng.gen_range(1..=4usize);
        let eqs: Vec<(u32, bool)> = (0..rng.gen_range(0..=2))
            .map(|_| (rng.gen_range(0..1u32 << arity), rng.gen_bool(0.5)))
            .collect();
        let tuples = (0u32..1 << arity)
            .filter(|&x| eqs.iter().all(|&(c, b)| ((c & x).count_ones() % 2 == 1) == b));
        relations.push(BooleanRelation::new(arity, tuples).expect("arity within limits"));
        cons.push(Constraint {
            relation: relations.len() - 1,
            vars: (0..arity).map(|_| rng.gen_range(0..n)).collect(),
        });
    }
    CspInstance::new(n, relations, cons).expect("generated instance is valid")
}

/// One representative per isomorphism class of simple graphs on `n`
/// vertices (the one with the smallest edge mask). Only sensible for
/// `n <= 6`.
pub fn simple_graphs_up_to_iso(n: usize) -> Vec<Multigraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut maps: Vec<Vec<usize>> = Vec::new();
    permutations(&mut perm, 0, &mut |p| {
        maps.push(pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect());
    });
    (0u32..1 << pairs.len())
        .filter(|&mask| {
            maps.iter().all(|map| {
                let image = (0..pairs.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .fold(0u32, |acc, i| acc | 1 << map[i]);
                image >= mask
            })
        })
        .map(|mask| {
            let chosen: Vec<_> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
            Multigraph::from_pairs(n, &chosen).unwrap()
        })
        .collect()
}

fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}
