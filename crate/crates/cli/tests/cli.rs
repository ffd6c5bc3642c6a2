use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idealize")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, value: &Value) -> String {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn validate_accepts_good_and_rejects_bad() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(
        dir.path(),
        "good.json",
        &json!({"name": "b", "size": 2, "zero": 0, "one": 1, "add": [[0,1],[1,1]], "mul": [[0,0],[0,1]]}),
    );
    let bad = write(
        dir.path(),
        "bad.json",
        &json!({"name": "b", "size": 2, "zero": 0, "one": 1, "add": [[0,0],[0,0]], "mul": [[0,0],[0,1]]}),
    );
    assert_eq!(run(&["validate", &good]).status.code(), Some(0));
    let out = run(&["validate", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout).to_string() + &String::from_utf8_lossy(&out.stderr);
    assert!(text.contains("AdditiveIdentity"), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["enumerate"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn missing_file_exits_one() {
    assert_eq!(run(&["validate", "/nonexistent/file.json"]).status.code(), Some(1));
}

#[test]
fn expect_with_oracle_on_diamond() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(
        dir.path(),
        "g.json",
        &json!({
            "d": 1,
            "nodes": ["s", "a", "b", "t"],
            "source": "s",
            "sink": "t",
            "edges": [
                {"from": "s", "to": "a", "p": 0.5, "v": [1.0]},
                {"from": "s", "to": "b", "p": 0.5, "v": [2.0]},
                {"from": "a", "to": "t", "p": 1.0, "v": [0.0]},
                {"from": "b", "to": "t", "p": 1.0, "v": [4.0]}
            ]
        }),
    );
    let out = run(&["expect", "--graph", &graph, "--oracle", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["schema"], "idealize.expect.v1");
    // Z = 1, r = 0.5*1 + 0.5*6 = 3.5
    assert!((v["total"]["p"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["expectation"][0].as_f64().unwrap() - 3.5).abs() < 1e-12);
    assert_eq!(v["oracle"]["paths"], 2);
    assert_eq!(v["oracle"]["agrees"], true);
}

#[test]
fn verify_single_instance_reports_schema() {
    let out = run(&["verify-theorems", "--instance", "zmod_4", "--module", "self", "--no-numeric", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["schema"], "idealize.verification.v1");
    assert_eq!(v["summary"]["fail"], 0);
    assert!(v["records"].as_array().unwrap().len() >= 40);
}

#[test]
fn expectation_build_writes_pairing() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("bb.json");
    let out = run(&["expectation-build", "--semiring", "boolean", "--module", "self", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["size"], 4);
    let pairs = v["pairing"]["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 4);
    assert_eq!(pairs[1], json!([0, 1]));
    // the written product is itself a valid semiring file
    assert_eq!(run(&["validate", out_path.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn enumerate_writes_one_file_per_structure() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["enumerate", "--order", "2", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn ideals_json_lists_every_ideal() {
    let out = run(&["ideals", "--instance", "zmod_4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["schema"], "idealize.ideals.v1");
    // {0}, {0,2}, Z/4
    assert_eq!(v["ideals"].as_array().unwrap().len(), 3);
}
