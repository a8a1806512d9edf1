use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graphpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&out)))
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("graphpoly-cli-{}-{name}", std::process::id()))
}

#[test]
fn tutte_at_two_counts_forests() {
    let out = run(&["tutte", "--x", "2", "k3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("T(G; x, 1): 7"));
}

#[test]
fn tutte_rejects_x_equal_one() {
    let out = run(&["tutte", "--x", "1", "k3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("x - 1"));
}

#[test]
fn forest_polynomial_of_triangle() {
    let v = json(&["forest-poly", "k3"]);
    assert_eq!(v["answers"]["polynomial"], "1 + 3*x + 3*x^2");
    assert_eq!(v["answers"]["forests"], "7");
}

#[test]
fn reduce_pm_on_four_cycle() {
    let v = json(&["reduce", "pm", "--graph", "c4", "--C", "2", "--x", "2"]);
    assert_eq!(v["answers"]["perfect matchings"], "2");
    assert_eq!(v["verdict"], "AGREE");
    assert_eq!(v["queries"], 81);
}

#[test]
fn reduce_pm_odd_graph_warns() {
    let v = json(&["reduce", "pm", "k3"]);
    assert_eq!(v["answers"]["perfect matchings"], "0");
    assert!(v["notes"][0].as_str().unwrap().contains("odd vertex count"));
}

#[test]
fn reduce_pm_with_every_oracle() {
    for oracle in ["sp", "frontier", "brute"] {
        let v = json(&["reduce", "pm", "k2", "--C", "1", "--oracle", oracle]);
        assert_eq!(v["answers"]["perfect matchings"], "1", "{oracle}");
        assert_eq!(v["verdict"], "AGREE", "{oracle}");
    }
}

#[test]
fn reduce_bis_on_triangle() {
    let v = json(&["reduce", "bis", "--graph", "k3", "--d", "3"]);
    assert_eq!(v["answers"]["independent sets"], "4");
    assert_eq!(v["verdict"], "AGREE");
}

#[test]
fn budget_overrun_exits_three() {
    let out = run(&["reduce", "bis", "k3", "--d", "1", "--oracle", "brute"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["reduce", "pm", "no-such-graph"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "everything"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn transcript_is_json_lines() {
    let path = scratch("bis.jsonl");
    let out = run(&["reduce", "bis", "k2", "--transcript", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[0]["answer"], "13");
    assert_eq!(lines[1]["answer"], "47");
    std::fs::remove_file(path).ok();
}

#[test]
fn graph_files_are_accepted() {
    let path = scratch("p3.graph");
    std::fs::write(&path, "p graph 3 2\ne 0 1\ne 1 2\n").unwrap();
    let v = json(&["oracle", "is", path.to_str().unwrap()]);
    assert_eq!(v["answers"]["count"], "5");
    std::fs::remove_file(path).ok();
}

#[test]
fn oracles_answer_named_graphs() {
    assert_eq!(json(&["oracle", "pm", "k4"])["answers"]["count"], "3");
    assert_eq!(json(&["oracle", "vc", "c4"])["answers"]["count"], "7");
    assert_eq!(json(&["oracle", "forests", "k4"])["answers"]["count"], "38");
}

#[test]
fn transforms_report_sizes() {
    let v = json(&["transform", "gadget", "k2", "--d", "1", "--ell", "2"]);
    assert_eq!(v["answers"]["vertices"], "8");
    assert_eq!(v["answers"]["edges"], "8");
    let v = json(&["transform", "stretch", "k2", "--k", "3"]);
    assert_eq!(v["answers"]["vertices"], "4");
}

#[test]
fn csp_classify_and_count() {
    let path = scratch("csp.json");
    std::fs::write(
        &path,
        r#"{"relations":[{"arity":3,"tuples":["000","110","101","011"]},{"arity":2,"tuples":["01","10","11"]}],
            "n":3,"constraints":[[0,[0,1,2]]]}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["csp", "classify", "--input", p]);
    assert_eq!(v["answers"]["class"], "contains non-affine");
    let v = json(&["csp", "count", "--input", p]);
    assert_eq!(v["answers"]["models"], "4");
    std::fs::remove_file(path).ok();
}

#[test]
fn verify_single_suites_pass() {
    for suite in ["gadget", "kron", "csp"] {
        let out = run(&["verify", suite]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        assert!(stdout(&out).contains("verdict: PASS"));
    }
}

#[test]
fn output_is_deterministic() {
    let strip = |v: serde_json::Value| {
        let mut v = v;
        v.as_object_mut().unwrap().remove("wall_ms");
        v
    };
    let a = strip(json(&["reduce", "pm", "c4"]));
    let b = strip(json(&["reduce", "pm", "c4"]));
    assert_eq!(a, b);
}
