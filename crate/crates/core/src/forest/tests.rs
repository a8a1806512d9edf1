use super::*;
use crate::generate::{random_multigraph, random_rational, random_simple_graph};
use crate::graph::{add_apex, named_graph, stretch, substitute_gadget, partition_edges, ApexLabels, Edge};
use crate::oracles::{pm_bruteforce, tutte_bruteforce, OracleBudget};
use crate::rational::{frac, int};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn g(name: &str) -> Multigraph {
    named_graph(name).unwrap()
}

fn at(pairs: &[(&str, Rational)]) -> BTreeMap<String, Rational> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

#[test]
fn k3_univariate() {
    let k3 = g("k3").relabeled(&"x".into());
    let r = forest_poly_bruteforce(&k3, &WeightAssignment::from_labels(&k3)).unwrap();
    assert_eq!(r.poly, SparsePolynomial::univariate("x", &[int(1), int(3), int(3)]));
    assert_eq!(r.forest_count, 7u32.into());
    assert_eq!(r.max_forest_size, 2);
}

#[test]
fn single_edge_and_k4() {
    let k2 = g("k2");
    let r = forest_poly_bruteforce(&k2, &WeightAssignment::from_labels(&k2)).unwrap();
    assert_eq!(r.poly.to_string(), "1 + w");
    let k4 = g("k4");
    let r = forest_poly_bruteforce(&k4, &WeightAssignment::from_labels(&k4)).unwrap();
    assert_eq!(r.poly.eval(&at(&[("w", int(1))])).unwrap(), int(38));
    assert_eq!(r.forest_count, 38u32.into());
}

#[test]
fn numeric_weights_fold_into_coefficients() {
    let k3 = g("k3");
    let w = WeightAssignment::new(vec![
        Weight::Value(int(2)),
        Weight::Symbol("x".into()),
        Weight::Value(frac(1, 2)),
    ]);
    // forests: {}, a, x, b, ax, ab, xb with a = 2, b = 1/2: (1 + a + b + ab) + x(1 + a + b)
    let r = forest_poly_bruteforce(&k3, &w).unwrap();
    assert_eq!(r.poly, SparsePolynomial::univariate("x", &[frac(9, 2), frac(7, 2)]));
}

#[test]
fn guard_is_enforced() {
    let big = Multigraph::new(2, vec![Edge::new(0, 1).with_mult(23)]).unwrap();
    let err = forest_poly_bruteforce(&big, &WeightAssignment::from_labels(&big)).unwrap_err();
    assert!(err.is_budget());
    // the series-parallel engine handles it: 1 + 23w at w = 1
    assert_eq!(forest_value_sp(&big, &[int(1)], DEFAULT_EDGE_GUARD).unwrap(), int(24));
}

#[test]
fn sp_examples() {
    let path2 = Multigraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
    for w in [int(1), frac(-1, 2), int(-1), frac(2, 7)] {
        let expected = pow(&(int(1) + &w), 2);
        assert_eq!(forest_value_sp(&path2, &[w.clone(), w.clone()], 22).unwrap(), expected);
    }
    // H_1 is a single 4-edge path: every subset is a forest
    let k2 = g("k2");
    let h1 = substitute_gadget(&k2, &partition_edges(&k2, 1).unwrap(), &[1]).unwrap();
    assert_eq!(forest_value_sp(&h1, &vec![int(1); 4], 22).unwrap(), int(16));
    let brute = forest_value_bruteforce(&h1, &vec![int(1); 4], 22).unwrap();
    assert_eq!(brute, int(16));
    // any tree at weight 1
    let tree = Multigraph::from_pairs(6, &[(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)]).unwrap();
    assert_eq!(forest_value_sp(&tree, &vec![int(1); 5], 22).unwrap(), int(32));
}

#[test]
fn sp_handles_vanishing_two_chains() {
    // t = -1/2 makes 1 + a + b = 0 on every 2-chain; whole chains still reduce
    let t = frac(-1, 2);
    let h = stretch(&g("k4"), 3).unwrap();
    let sp = forest_value_sp(&h, &vec![t.clone(); h.edge_count()], 22).unwrap();
    let z = g_k(&t, 3).unwrap();
    let rhs = pow(&stretch_prefactor(&t, 3), 6) * forest_value_bruteforce(&g("k4"), &vec![z; 6], 22).unwrap();
    assert_eq!(sp, rhs);
    // a 4-cycle at w = -1/2: 1 + 4w + 6w^2 + 4w^3 = 1 - 2 + 3/2 - 1/2 = 0
    let c4 = g("c4");
    assert_eq!(forest_value_sp(&c4, &[t.clone(), t.clone(), t.clone(), t], 22).unwrap(), int(0));
}

#[test]
fn sp_reduces_stretched_graphs_to_small_cores() {
    let h = stretch(&g("petersen"), 3).unwrap();
    let core = reduce(&h, &vec![int(1); h.edge_count()]).unwrap();
    assert_eq!(core.edges.len(), 15);
    assert!(forest_value_sp(&h, &vec![int(1); h.edge_count()], 22).is_ok());
}

#[test]
fn tutte_examples() {
    assert_eq!(tutte_y1(&g("k2"), &int(3)).unwrap(), int(3));
    assert_eq!(tutte_y1(&g("k3"), &int(2)).unwrap(), int(7));
    let two = Multigraph::from_pairs(4, &[(0, 1), (2, 3)]).unwrap();
    assert_eq!(tutte_y1(&two, &int(2)).unwrap(), int(4));
    assert!(matches!(tutte_y1(&g("k3"), &int(1)), Err(Error::Domain(_))));
}

#[test]
fn tutte_bridge_matches_subset_expansion() {
    let budget = OracleBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let m = rng.gen_range(0..10);
        let h = random_simple_graph(&mut rng, 6, m);
        for x in [int(2), int(-1), frac(3, 2), int(0)] {
            assert_eq!(
                tutte_y1(&h, &x).unwrap(),
                tutte_bruteforce(&h, &x, &int(1), &budget).unwrap()
            );
        }
    }
}

#[test]
fn g_k_domain() {
    assert_eq!(g_k(&int(1), 3).unwrap(), frac(1, 7));
    assert_eq!(g_k(&frac(-1, 2), 3).unwrap(), frac(-1, 2));
    assert!(matches!(g_k(&frac(-1, 2), 2), Err(Error::Domain(_))));
    assert!(matches!(g_k(&frac(-1, 2), 4), Err(Error::Domain(_))));
}

#[test]
fn apex_examples() {
    let k2 = g("k2");
    let p = apex_rhs_polynomial(&k2, &[int(-1), int(-1)]).unwrap();
    assert_eq!(p, SparsePolynomial::univariate("w", &[int(0), int(-1)]));
    let e2 = Multigraph::empty(2);
    let (z0, z1) = (frac(1, 3), int(4));
    assert_eq!(
        apex_rhs(&e2, &int(9), &[z0.clone(), z1.clone()]).unwrap(),
        (int(1) + z0) * (int(1) + z1)
    );
    let k3 = g("k3");
    assert_eq!(
        apex_rhs(&k3, &frac(2, 3), &vec![int(0); 3]).unwrap(),
        forest_value_bruteforce(&k3, &vec![frac(2, 3); 3], 22).unwrap()
    );
}

#[test]
fn apex_identity_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..25 {
        let n = rng.gen_range(1..6);
        let m = rng.gen_range(0..8);
        let h = random_simple_graph(&mut rng, n, m);
        let (apexed, _) = add_apex(&h, ApexLabels::PerVertex).unwrap();
        let wval = random_rational(&mut rng);
        let z: Vec<Rational> = (0..n).map(|_| random_rational(&mut rng)).collect();
        let mut weights = vec![wval.clone(); h.edge_count()];
        weights.extend(z.iter().cloned());
        assert_eq!(
            forest_value_bruteforce(&apexed, &weights, 22).unwrap(),
            apex_rhs(&h, &wval, &z).unwrap()
        );
    }
}

#[test]
fn pm_extraction_examples() {
    let k2_poly = SparsePolynomial::univariate("w", &[int(0), int(-1)]);
    let r = pm_coefficient_extract(&k2_poly, 2).unwrap();
    assert_eq!(r.count, BigInt::from(1));
    let r = pm_coefficient_extract(&k2_poly, 3).unwrap();
    assert!(r.odd_vertex_count);
    assert_eq!(r.count, BigInt::zero());

    let budget = OracleBudget::default();
    for name in ["c4", "k4", "p4", "k2"] {
        let h = g(name);
        let poly = apex_rhs_polynomial(&h, &vec![int(-1); h.vertex_count()]).unwrap();
        let got = pm_coefficient_extract(&poly, h.vertex_count()).unwrap().count;
        assert_eq!(got, BigInt::from(pm_bruteforce(&h, &budget).unwrap()), "{name}");
    }
}

#[test]
fn isolated_vertex_forests_vanish_at_z_minus_one() {
    // every forest leaving vertex 3 isolated carries the factor 1 - 1 = 0,
    // so only forests touching all vertices survive in the top coefficients
    let h = Multigraph::from_pairs(4, &[(0, 1), (1, 2)]).unwrap();
    let poly = apex_rhs_polynomial(&h, &vec![int(-1); 4]).unwrap();
    assert!(poly.is_zero());
}

fn stretch_identity_holds(h: &Multigraph, k: u32, w: &Rational) -> bool {
    let m = h.total_edge_count() as usize;
    let stretched = stretch(h, k).unwrap();
    let lhs = forest_value_sp(&stretched, &vec![w.clone(); stretched.edge_count()], 22).unwrap();
    let z = g_k(w, k).unwrap();
    let rhs = pow(&stretch_prefactor(w, k), m)
        * forest_value_bruteforce(h, &vec![z; h.edge_count()], 22).unwrap();
    lhs == rhs
}

#[test]
fn stretch_identity_fixed_cases() {
    let double = Multigraph::new(3, vec![Edge::new(0, 1).with_mult(2), Edge::new(1, 2)]).unwrap();
    for k in 2..=5 {
        for w in [int(1), int(2), int(-2), frac(1, 3)] {
            assert!(stretch_identity_holds(&double, k, &w), "k={k} w={w}");
            assert!(stretch_identity_holds(&g("k4"), k, &w), "k={k} w={w}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sp_agrees_with_bruteforce(seed in any::<u64>(), n in 2usize..7, records in 0usize..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_multigraph(&mut rng, n, records, 3);
        let w: Vec<Rational> = (0..h.edge_count()).map(|_| random_rational(&mut rng)).collect();
        prop_assert_eq!(
            forest_value_sp(&h, &w, 22).unwrap(),
            forest_value_bruteforce(&h, &w, 22).unwrap()
        );
    }

    #[test]
    fn sp_agrees_on_chains_with_half_weights(seed in any::<u64>(), k in 2u32..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = random_multigraph(&mut rng, 4, 4, 2);
        let h = stretch(&base, k).unwrap();
        prop_assume!(h.total_edge_count() <= 22);
        let w = vec![frac(-1, 2); h.edge_count()];
        prop_assert_eq!(
            forest_value_sp(&h, &w, 22).unwrap(),
            forest_value_bruteforce(&h, &w, 22).unwrap()
        );
    }

    #[test]
    fn bundle_collapse_preserves_value(seed in any::<u64>(), n in 2usize..6, records in 0usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_multigraph(&mut rng, n, records, 3);
        let w: Vec<Rational> = (0..h.edge_count()).map(|_| random_rational(&mut rng)).collect();
        let (collapsed, cw) = crate::graph::collapse_parallel(&h, &w).unwrap();
        prop_assert!(collapsed.is_simple());
        prop_assert_eq!(
            forest_value_bruteforce(&h, &w, 22).unwrap(),
            forest_value_bruteforce(&collapsed, &cw, 22).unwrap()
        );
    }

    #[test]
    fn degree_bound_and_constant_term(seed in any::<u64>(), n in 1usize..7, m in 0usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_simple_graph(&mut rng, n, m);
        let r = forest_poly_bruteforce(&h, &WeightAssignment::from_labels(&h)).unwrap();
        prop_assert_eq!(r.poly.constant_term(), int(1));
        let bound = (h.vertex_count() - h.component_count()) as u32;
        prop_assert!(r.poly.total_degree().unwrap() <= bound);
        prop_assert_eq!(r.max_forest_size as u32, bound);
    }
}
