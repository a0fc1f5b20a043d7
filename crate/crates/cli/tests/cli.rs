use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordcomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn complete_chain() {
    let out = run(&["complete", "--input", &fixture("chain3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["cut_count"], 3);
    assert_eq!(report["has_minimum"], true);
    assert_eq!(report["verification"]["failures"], Value::Array(vec![]));
}

#[test]
fn complete_antichain_with_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("a.dot");
    let out = run(&["complete", "--input", &fixture("antichain2.json"), "--emit-dot", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["cut_count"], 4);
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("digraph completion {"));
    assert!(text.contains("c0 -> c1;"));
}

#[test]
fn malformed_and_invalid_posets() {
    let out = run(&["complete", "--input", &fixture("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid input"));
    let out = run(&["complete", "--input", &fixture("cycle.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("CycleDetected"));
    let out = run(&["complete", "--input", "/nonexistent/poset.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_identity_echoes_target() {
    let out = run(&["solve", "--map", &fixture("identity.json"), "--target", &fixture("principal_b.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["solvable"], true);
    assert_eq!(r["target"], serde_json::json!(["a", "b"]));
    assert_eq!(r["solution_elements"], serde_json::json!(["a", "b"]));
    assert_eq!(r["checks"]["solution_verified"], true);
}

#[test]
fn solve_constant_map_off_image() {
    let out = run(&["solve", "--map", &fixture("constant.json"), "--target", &fixture("principal_c.json")]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["solvable"], false);
    assert_eq!(r["solution"], Value::Null);
    assert_ne!(r["sup_of_images"], r["inf_of_images"]);
}

#[test]
fn solve_rejects_non_cut() {
    let out = run(&["solve", "--map", &fixture("constant.json"), "--target", &fixture("not_a_cut.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("InvalidCut"));
}

#[test]
fn inline_target() {
    let out = run(&["solve", "--input", &fixture("identity.json"), "--target", r#"{"principal": "a"}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["solution_elements"], serde_json::json!(["a"]));
}

#[test]
fn check_suites() {
    let out = run(&["check", "macneille", "--input", &fixture("chain3.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("macneille: 1 cases, 0 failures, PASS"));
    let out = run(&["check", "theorem41", "--seed", "3", "--count", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["check", "unknown"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("UnknownSuite"));
}

#[test]
fn gen_families() {
    let out = run(&["gen", "--family", "antichain", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let p = json(&out);
    assert_eq!(p["elements"].as_array().unwrap().len(), 4);
    assert_eq!(p["relation"], Value::Array(vec![]));

    let a = run(&["gen", "--family", "random", "--n", "6", "--seed", "7"]);
    let b = run(&["gen", "--family", "random", "--n", "6", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);

    let out = run(&["gen", "--family", "boolean", "--k", "20"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["gen", "--family", "chain"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("BadSpec"));
    let out = run(&["gen", "--family", "gridfn", "--g", "2", "--v", "2", "--stencil", "blur"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn caps_are_enforced() {
    let out = run(&["complete", "--input", &fixture("chain3.json"), "--max-arity", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["complete", "--input", &fixture("antichain2.json"), "--max-cuts", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["complete", "--input", &fixture("chain3.json"), "--max-cuts", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_complete_solve_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let poset = dir.path().join("p.json");
    let eq = dir.path().join("eq.json");
    let out = run(&["gen", "--family", "divisor", "--m", "12", "-o", poset.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let out = run(&["complete", "--input", poset.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["cut_count"], 6);

    let out = run(&["gen", "--family", "gridfn", "--g", "2", "--v", "3", "--stencil", "dilate", "-o", eq.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["solve", "--map", eq.to_str().unwrap(), "--target", r#"{"principal": "(1,1)"}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["checks"]["solution_verified"], true);
}

#[test]
fn export_matches_emitted_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("c.dot");
    run(&["complete", "--input", &fixture("antichain2.json"), "--emit-dot", dot.to_str().unwrap()]);
    let out = run(&["export", "--input", &fixture("antichain2.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(out.stdout, std::fs::read(dot).unwrap());
}
