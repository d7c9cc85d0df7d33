use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reconfig")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn construct_then_measure() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("cp");
    let v = json(&run(&["construct", "comp-path", "--n", "7", "--out", p(&prefix), "--measure"]));
    let edges = v["graph"].as_str().unwrap().to_string();
    let report: Value = serde_json::from_str(&std::fs::read_to_string(v["report"].as_str().unwrap()).unwrap()).unwrap();
    assert_eq!(report["claim"]["value"], 5);

    let d = json(&run(&["diameter", &edges, "--k", "2"]));
    assert_eq!(d["diameter"], 5);
    assert_eq!(d["components"], 1);

    let k = json(&run(&["decide2", &edges, "--from", "0,1", "--to", "5,6", "--algo", "both", "--witness"]));
    assert_eq!(k["reachable"], true);
    assert_eq!(k["agree"], true);
    assert_eq!(k["sequence"].as_array().unwrap().len(), 6);
}

#[test]
fn construct_prints_report_without_out() {
    let v = json(&run(&["construct", "circulant", "--p", "17", "--s", "1"]));
    assert_eq!(v["report"]["vertices"], 16);
}

#[test]
fn search_small_exhaustive() {
    let v = json(&run(&["search", "--n", "5", "--k", "2", "--exhaustive"]));
    assert_eq!(v["best"], 3);
    assert_eq!(v["graphs_examined"], 34);
}

#[test]
fn search_random_is_reproducible() {
    let a = json(&run(&["--seed", "9", "search", "--n", "6", "--k", "2", "--random", "40"]));
    let b = json(&run(&["--seed", "9", "search", "--n", "6", "--k", "2", "--random", "40"]));
    assert_eq!(a, b);
    assert_eq!(a["best"], 4);
}

#[test]
fn verify_checks_pass() {
    for args in [
        vec!["verify", "circulant-structure", "--p", "29", "--s", "1"],
        vec!["verify", "claim-inter", "--budget", "47"],
        vec!["verify", "63-free", "--p", "17", "--s", "1"],
    ] {
        let v = json(&run(&args));
        assert_eq!(v["pass"], true, "{args:?}: {v}");
    }
}

#[test]
fn apset_exact() {
    let v = json(&run(&["apset", "--n", "20", "--method", "exact"]));
    assert_eq!(v["size"], 9);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["diameter", "/nonexistent/graph", "--k", "2"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(64));
    assert_eq!(run(&["construct", "circulant", "--p", "18", "--s", "1"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("k");
    run(&["construct", "comp-path", "--n", "12", "--out", p(&prefix)]);
    let edges = dir.path().join("k.edges");
    let capped = run(&["--cap", "3", "diameter", p(&edges), "--k", "2"]);
    assert_eq!(capped.status.code(), Some(3));
}
