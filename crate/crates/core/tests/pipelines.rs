use std::collections::BTreeMap;
use std::io::BufReader;

use graphpoly_core::bis_reduction::{count_is, BisParams, ConditionedOracle, DEFAULT_BIS_GRID_BUDGET};
use graphpoly_core::csp::{count_affine, count_bruteforce, imp2sat_auto, pos2sat_from_graph, CspJson};
use graphpoly_core::forest::{forest_poly_bruteforce, forest_poly_sp, tutte_y1};
use graphpoly_core::generate::{all_simple_graphs, random_affine_instance, simple_graphs_up_to_iso};
use graphpoly_core::graph::{named_graph, parse_graph, NAMED_GRAPHS};
use graphpoly_core::oracles::{
    forests_bruteforce, is_bruteforce, pm_bruteforce, tutte_bruteforce, vc_bruteforce, OracleBudget,
};
use graphpoly_core::pm_reduction::{
    count_pm, BruteForceOracle, ForestOracle, FrontierOracle, PmReductionParams, SeriesParallelOracle,
};
use graphpoly_core::rational::int;
use graphpoly_core::transcript::OracleTranscript;
use graphpoly_core::WeightAssignment;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn named_graph_counts() {
    let budget = OracleBudget::default();
    // (name, #PM, #IS, forests)
    let table = [
        ("k2", 1u64, 3u64, 2u64),
        ("k3", 0, 4, 7),
        ("k4", 3, 5, 38),
        ("c4", 2, 7, 15),
        ("p3", 0, 5, 4),
        ("p4", 1, 8, 8),
        ("k33", 6, 15, 0),
    ];
    for (name, pm, is, forests) in table {
        let g = named_graph(name).unwrap();
        assert_eq!(pm_bruteforce(&g, &budget).unwrap(), pm.into(), "{name}");
        assert_eq!(is_bruteforce(&g, &budget).unwrap(), is.into(), "{name}");
        assert_eq!(vc_bruteforce(&g, &budget).unwrap(), is.into(), "{name}");
        if forests > 0 {
            assert_eq!(forests_bruteforce(&g, &budget).unwrap(), forests.into(), "{name}");
        }
    }
    let petersen = named_graph("petersen").unwrap();
    assert_eq!(pm_bruteforce(&petersen, &budget).unwrap(), 6u32.into());
    assert_eq!(is_bruteforce(&petersen, &budget).unwrap(), 76u32.into());
    assert_eq!(NAMED_GRAPHS.len(), 8);
}

#[test]
fn pm_pipeline_agrees_across_oracles() {
    let budget = OracleBudget::default();
    let sp = SeriesParallelOracle::default();
    let frontier = FrontierOracle::default();
    let brute = BruteForceOracle { guard: 24 };
    let oracles: [&dyn ForestOracle; 3] = [&sp, &frontier, &brute];
    let params = PmReductionParams::with_block_size(2).unwrap();
    for oracle in oracles {
        let g = named_graph("k2").unwrap();
        let report = count_pm(&g, &params, oracle).unwrap();
        assert_eq!(report.count, 1.into(), "{}", oracle.name());
    }
    for name in ["c4", "p4"] {
        let g = named_graph(name).unwrap();
        let expected: num_bigint::BigInt = pm_bruteforce(&g, &budget).unwrap().into();
        for oracle in [&sp as &dyn ForestOracle, &frontier] {
            assert_eq!(count_pm(&g, &params, oracle).unwrap().count, expected, "{name} {}", oracle.name());
        }
    }
}

#[test]
fn pm_pipeline_on_every_small_even_graph() {
    let budget = OracleBudget::default();
    let sp = SeriesParallelOracle::default();
    let params = PmReductionParams::new(3, int(3), 3).unwrap();
    for n in [2, 4] {
        for g in all_simple_graphs(n) {
            let expected: num_bigint::BigInt = pm_bruteforce(&g, &budget).unwrap().into();
            assert_eq!(count_pm(&g, &params, &sp).unwrap().count, expected);
        }
    }
}

#[test]
fn pm_transcript_round_trips_and_replays() {
    let g = named_graph("c4").unwrap();
    let sp = SeriesParallelOracle::default();
    let params = PmReductionParams::with_block_size(2).unwrap();
    let report = count_pm(&g, &params, &sp).unwrap();
    let mut buf = Vec::new();
    report.transcript.write_jsonl(&mut buf).unwrap();
    let back = OracleTranscript::read_jsonl(BufReader::new(&buf[..])).unwrap();
    assert_eq!(back.len(), report.transcript.len());
    let frontier = FrontierOracle::default();
    let mismatches = back
        .replay(|h, t| frontier.forest_value(h, t.expect("pm queries carry a point")))
        .unwrap();
    assert!(mismatches.is_empty());
}

#[test]
fn bis_pipeline_on_every_small_graph() {
    let budget = OracleBudget::default();
    for n in 1..=4 {
        for g in simple_graphs_up_to_iso(n) {
            let expected = is_bruteforce(&g, &budget).unwrap();
            let m = g.edge_count().max(1);
            for d in [1, 2, m] {
                let grid = ((d as u64 + 1).pow(3)).pow(m.div_ceil(d) as u32);
                if grid > DEFAULT_BIS_GRID_BUDGET {
                    let err = count_is(&g, &BisParams::new(d).unwrap(), &ConditionedOracle).unwrap_err();
                    assert!(err.is_budget());
                    continue;
                }
                let report = count_is(&g, &BisParams::new(d).unwrap(), &ConditionedOracle).unwrap();
                assert_eq!(report.count, expected);
                assert!(report.checks.all_pass());
            }
        }
    }
}

#[test]
fn tutte_bridge_matches_enumeration() {
    let budget = OracleBudget::default();
    for name in ["k3", "k4", "c4", "p4", "petersen"] {
        let g = named_graph(name).unwrap();
        for x in [2, 3, -1, 0] {
            let x = int(x);
            let bridge = tutte_y1(&g, &x).unwrap();
            if g.edge_count() as u64 <= budget.tutte_edges {
                assert_eq!(bridge, tutte_bruteforce(&g, &x, &int(1), &budget).unwrap(), "{name} x = {x}");
            }
        }
    }
    let petersen = named_graph("petersen").unwrap();
    let all_ones = WeightAssignment::uniform_value(&petersen, int(1));
    assert_eq!(tutte_y1(&petersen, &int(2)).unwrap(), forest_poly_sp(&petersen, &all_ones).unwrap());
}

#[test]
fn forest_polynomial_evaluates_to_forest_count() {
    let budget = OracleBudget::default();
    for g in all_simple_graphs(4) {
        let poly = forest_poly_bruteforce(&g, &WeightAssignment::uniform_symbol(&g, "x")).unwrap();
        let at_one = poly.poly.eval(&BTreeMap::from([("x".to_string(), int(1))])).unwrap();
        let count = forests_bruteforce(&g, &budget).unwrap();
        assert_eq!(at_one, int(1) * num_bigint::BigInt::from(count.clone()));
        assert_eq!(poly.forest_count, count);
    }
}

#[test]
fn graph_text_round_trips_through_the_parser() {
    for name in NAMED_GRAPHS {
        let g = named_graph(name).unwrap();
        let text = graphpoly_core::graph::write_graph(&g);
        assert_eq!(parse_graph(&text).unwrap(), g, "{name}");
    }
}

#[test]
fn csp_encodings_and_json() {
    let budget = OracleBudget::default();
    let c4 = named_graph("c4").unwrap();
    assert_eq!(count_bruteforce(&imp2sat_auto(&c4).unwrap()).unwrap(), is_bruteforce(&c4, &budget).unwrap());
    let petersen = named_graph("petersen").unwrap();
    assert_eq!(
        count_bruteforce(&pos2sat_from_graph(&petersen).unwrap()).unwrap(),
        vc_bruteforce(&petersen, &budget).unwrap()
    );
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..20 {
        let inst = random_affine_instance(&mut rng, 8, 5);
        let text = serde_json::to_string(&CspJson::from_instance(&inst)).unwrap();
        let back = CspJson::parse(&text).unwrap().instance().unwrap();
        assert_eq!(count_affine(&back).unwrap(), count_bruteforce(&inst).unwrap());
    }
}
