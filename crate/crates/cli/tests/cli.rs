//! End-to-end runs of the `graph-ideal` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graph-ideal")).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn invariants_reproduce_golden_reports() {
    for name in ["single_edge", "c4", "k3", "bipartite_hamiltonian", "forest6", "theta"] {
        let out = run(&["invariants", path(&golden(&format!("{name}.graph")))]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let expected = std::fs::read_to_string(golden(&format!("{name}.report.json"))).unwrap();
        assert_eq!(String::from_utf8(out.stdout).unwrap(), expected, "{name}");
    }
}

#[test]
fn ideal_with_explicit_order_matches_golden() {
    let out = run(&["ideal", path(&golden("bridged_triangles.graph")), "--t-order", "12>23>13>34>45>56>46"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = std::fs::read_to_string(golden("bridged_triangles.ideal.json")).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected);
}

#[test]
fn bad_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let loop_file = dir.path().join("loop.graph");
    std::fs::write(&loop_file, "1 1\n").unwrap();
    let garbage = dir.path().join("garbage.graph");
    std::fs::write(&garbage, "1 two\n").unwrap();
    for file in [loop_file, garbage, dir.path().join("missing.graph")] {
        let out = run(&["invariants", path(&file)]);
        assert_eq!(out.status.code(), Some(2), "{}", file.display());
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    }
    let out = run(&["invariants", path(&golden("c4.graph")), "--field", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pair_cap_exits_with_three() {
    let out = run(&["invariants", path(&golden("c6.graph")), "--cap-pairs", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_passes_on_the_triangle() {
    let out = run(&["check", path(&golden("k3.graph"))]);
    assert_eq!(out.status.code(), Some(0));
    let verdicts = stdout_json(&out);
    let verdicts = verdicts.as_array().unwrap();
    assert_eq!(verdicts.len(), 9);
    assert!(verdicts.iter().all(|v| v["status"] != "fail"));
}

#[test]
fn nested_search_reports_null_when_none_exists() {
    let out = run(&["ears", path(&golden("bipartite_hamiltonian.graph")), "--nested", "--phi"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert!(v["decomposition"].is_null());
    assert_eq!(v["phi"], 1);

    let out = run(&["ears", path(&golden("theta.graph")), "--nested"]);
    let v = stdout_json(&out);
    assert_eq!(v["evenEars"], 2);
    assert_eq!(v["decomposition"]["ears"].as_array().unwrap().len(), 2);
}

#[test]
fn mu_prints_a_maximum_join() {
    let out = run(&["mu", path(&golden("c6.graph"))]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["mu"], 3);
    assert_eq!(v["join"].as_array().unwrap().len(), 3);
}

#[test]
fn json_flag_writes_the_output() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.json");
    let out = run(&["mu", path(&golden("k23.graph")), "--json", path(&target)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&target).unwrap(), out.stdout);
}

#[test]
fn random_corpus_is_deterministic() {
    let args = ["corpus", "--random", "12", "--max-edges", "6", "--seed", "9"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["graphs"], 12);
    assert_eq!(v["passed"], 12);
}

#[test]
fn corpus_reads_a_directory() {
    let out = run(&["corpus", "--dir", path(&golden(""))]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["graphs"], 9);
    let ids: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert!(ids.windows(2).all(|w| w[0] < w[1]));
    assert!(ids.contains(&"c4"));
}

#[test]
fn log_variable_enables_diagnostics() {
    let out = Command::new(env!("CARGO_BIN_EXE_graph-ideal"))
        .args(["ears", path(&golden("bipartite_hamiltonian.graph")), "--nested"])
        .env("GRAPH_IDEAL_LOG", "info")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stderr).contains("no nested ear decomposition"));
    let quiet = run(&["ears", path(&golden("bipartite_hamiltonian.graph")), "--nested"]);
    assert!(quiet.stderr.is_empty());
}
