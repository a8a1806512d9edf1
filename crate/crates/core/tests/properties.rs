use std::collections::BTreeMap;

use graphpoly_core::forest::{forest_value_bruteforce, forest_value_sp, tutte_y1};
use graphpoly_core::graph::{collapse_parallel, fatten, parse_graph, stretch, write_graph, Edge};
use graphpoly_core::oracles::{forest_value_frontier, is_bruteforce, tutte_bruteforce, vc_bruteforce, OracleBudget};
use graphpoly_core::polynomial::{default_nodes, interpolate_grid, GridValues, SparsePolynomial};
use graphpoly_core::rational::int;
use graphpoly_core::{Multigraph, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Rational::new(p.into(), q.into()))
}

fn multigraph(max_n: usize, max_records: usize, max_mult: u32) -> impl Strategy<Value = Multigraph> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n - 1, 1..=max_mult), 0..=max_records).prop_map(move |recs| {
            let edges = recs
                .into_iter()
                .map(|(u, v, k)| Edge::new(u, if v >= u { v + 1 } else { v }).with_mult(k))
                .collect();
            Multigraph::new(n, edges).unwrap()
        })
    })
}

fn simple_graph(max_n: usize) -> impl Strategy<Value = Multigraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        prop::collection::vec(any::<bool>(), len).prop_map(move |keep| {
            let chosen: Vec<_> = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&p, _)| p).collect();
            Multigraph::from_pairs(n, &chosen).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_forest_evaluators_agree(g in multigraph(6, 7, 3), ws in prop::collection::vec(rational(), 7)) {
        let w = &ws[..g.edge_count()];
        let brute = forest_value_bruteforce(&g, w, 22).unwrap();
        prop_assert_eq!(&brute, &forest_value_sp(&g, w, 22).unwrap());
        prop_assert_eq!(&brute, &forest_value_frontier(&g, w, &OracleBudget::default()).unwrap());
    }

    #[test]
    fn collapsing_bundles_keeps_the_value(g in multigraph(5, 6, 3), ws in prop::collection::vec(rational(), 6)) {
        let w = &ws[..g.edge_count()];
        let (simple, collapsed) = collapse_parallel(&g, w).unwrap();
        prop_assert!(simple.is_simple());
        prop_assert_eq!(
            forest_value_bruteforce(&g, w, 22).unwrap(),
            forest_value_bruteforce(&simple, &collapsed, 22).unwrap()
        );
    }

    #[test]
    fn fatten_then_collapse_scales_weights(g in simple_graph(5), mults in prop::collection::vec(1u32..=4, 10), w in rational()) {
        let m = g.edge_count();
        let fat = fatten(&g, &mults[..m]).unwrap();
        prop_assert_eq!(fat.total_edge_count(), mults[..m].iter().map(|&k| k as u64).sum::<u64>());
        let direct: Vec<Rational> = mults[..m].iter().map(|&k| &w * int(k as i64)).collect();
        prop_assert_eq!(
            forest_value_bruteforce(&fat, &vec![w.clone(); m], 22).unwrap(),
            forest_value_bruteforce(&g, &direct, 22).unwrap()
        );
    }

    #[test]
    fn stretch_counts(g in multigraph(5, 4, 2), k in 1u32..=4) {
        let h = stretch(&g, k).unwrap();
        let copies = g.total_edge_count() as usize;
        prop_assert_eq!(h.total_edge_count() as usize, copies * k as usize);
        prop_assert_eq!(h.vertex_count(), g.vertex_count() + copies * (k as usize - 1));
        prop_assert_eq!(h.component_count(), g.component_count());
        if k >= 2 {
            prop_assert!(h.is_simple());
        }
    }

    #[test]
    fn tutte_bridge_matches_rank_generating_sum(g in simple_graph(5), x in rational()) {
        prop_assume!(x != int(1));
        let budget = OracleBudget::default();
        prop_assert_eq!(tutte_y1(&g, &x).unwrap(), tutte_bruteforce(&g, &x, &int(1), &budget).unwrap());
    }

    #[test]
    fn independent_sets_equal_vertex_covers(g in simple_graph(8)) {
        let budget = OracleBudget::default();
        prop_assert_eq!(is_bruteforce(&g, &budget).unwrap(), vc_bruteforce(&g, &budget).unwrap());
    }

    #[test]
    fn graph_text_round_trip(g in multigraph(6, 8, 4)) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn grid_interpolation_recovers_polynomials(
        coeffs in prop::collection::vec(-20i64..=20, 12),
        dx in 0usize..=3,
        dy in 0usize..=2,
    ) {
        let vars = vec!["x".to_string(), "y".to_string()];
        let mut p = SparsePolynomial::zero(vars.clone());
        for i in 0..=dx {
            for j in 0..=dy {
                p.add_term(vec![i as u32, j as u32], int(coeffs[i * 3 + j]));
            }
        }
        let nodes = vec![default_nodes(dx), default_nodes(dy)];
        let shape = vec![dx + 1, dy + 1];
        let values = (0..shape[0] * shape[1])
            .map(|flat| {
                let idx = GridValues::index_of(&shape, flat);
                let point = BTreeMap::from([
                    ("x".to_string(), nodes[0][idx[0]].clone()),
                    ("y".to_string(), nodes[1][idx[1]].clone()),
                ]);
                p.eval(&point).unwrap()
            })
            .collect();
        let back = interpolate_grid(&vars, &nodes, &GridValues { shape, values }).unwrap();
        prop_assert_eq!(back, p);
    }
}
