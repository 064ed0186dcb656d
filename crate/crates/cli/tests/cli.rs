use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const TAILED_SQUARE_EDGES: &str = "\
# base u v w x with leaves a, b; K2 hung at v and w
u x
u v
v w
w x
u a
x b
v v1
v v2
v1 v2
w w1
w w2
w1 w2
";

fn bei(args: &[&str]) -> Output {
    bei_stdin(args, "")
}

fn bei_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bei"))
        .args(args)
        .env_remove("BEI_BOUND")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

fn error_json(o: &Output) -> Value {
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    serde_json::from_str(err.trim()).unwrap()
}

#[test]
fn construct_trivial_corona_as_dot() {
    let out = stdout(&bei(&["construct", "--corona", "K1", "K1", "--out", "dot"]));
    assert!(out.starts_with("graph"));
    assert_eq!(out.matches("--").count(), 1);
    assert!(out.contains("0 -- 1;"));
}

#[test]
fn tailed_square_corona_is_not_unmixed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tailed_square.txt");
    fs::write(&path, TAILED_SQUARE_EDGES).unwrap();
    let v = json(&bei(&["check", "--unmixed", "-i", path.to_str().unwrap()]));
    assert_eq!(v["unmixed"], false);
    assert_eq!(v["witness_labels"], serde_json::json!(["u", "w"]));
    assert_eq!(v["witness_components"], 4);
}

#[test]
fn full_corona_invariants() {
    let v = json(&bei(&[
        "invariants",
        "--family",
        "full-corona",
        "--n",
        "2",
        "--pendant-block-graph",
        "P3",
    ]));
    assert_eq!(v["depth"]["value"], 8);
    assert_eq!(v["reg"]["value"], 4);
    assert_eq!(v["dim"]["value"], 9);
    assert_eq!(v["cmdef"]["value"], 1);
    assert_eq!(v["oracle_dimension"], 9);
    assert_eq!(v["oracle_agrees"], true);
}

#[test]
fn closed_base_invariants_use_the_oracle() {
    let v = json(&bei(&[
        "invariants",
        "--family",
        "path",
        "--n",
        "3",
        "--pendant-block-graph",
        "K2",
    ]));
    assert_eq!(v["dim"]["provenance"], "oracle");
    assert_eq!(v["depth"]["value"], 10);
    let v = json(&bei(&[
        "invariants",
        "--family",
        "path",
        "--n",
        "3",
        "--pendant-block-graph",
        "K2",
        "--no-oracle",
    ]));
    assert!(v["dim"].is_null());
    assert!(v["notes"]
        .as_array()
        .unwrap()
        .iter()
        .any(|n| n == "dim: oracle-unavailable"));
}

#[test]
fn invariants_script_records_expected_depth() {
    let out = stdout(&bei(&[
        "invariants",
        "--family",
        "full-corona",
        "--n",
        "2",
        "--pendant-block-graph",
        "P3",
        "--out",
        "cas",
    ]));
    assert!(out.contains("expected depth: 8"));
    assert!(out.contains("x8"));
}

#[test]
fn cas_script_for_k2() {
    let out = stdout(&bei(&["export", "K2", "--out", "cas"]));
    assert!(out.contains("ideal(x1*y2-x2*y1)"));
    let sing = stdout(&bei(&["export", "K2", "--out", "cas", "--dialect", "singular"]));
    assert_ne!(out, sing);
    assert_eq!(
        sing,
        stdout(&bei(&["export", "K2", "--out", "cas", "--dialect", "singular"]))
    );
}

#[test]
fn tailed_square_script_has_twelve_generators() {
    let out = stdout(&bei_stdin(&["export", "-i", "-", "--out", "cas"], TAILED_SQUARE_EDGES));
    let ideal = out.lines().find(|l| l.starts_with("J = ideal(")).unwrap();
    assert_eq!(ideal.matches("*y").count(), 12 * 2);
}

#[test]
fn graph6_round_trip() {
    let g6 = stdout(&bei(&[
        "construct",
        "--corona",
        "C4",
        "P3",
        "--attach",
        "0,2",
        "--out",
        "graph6",
    ]));
    let back = json(&bei(&["construct", g6.trim()]));
    let direct = json(&bei(&["construct", "--corona", "C4", "P3", "--attach", "0,2"]));
    assert_eq!(back["edges"], direct["edges"]);
    assert_eq!(back["graph6"].as_str().unwrap(), g6.trim());
}

#[test]
fn spec_json_input_keeps_the_corona_structure() {
    let spec = r#"{"base": "A_", "L": [0, 1], "pendant": "Bg"}"#;
    let out = stdout(&bei_stdin(&["export", "-i", "-", "--out", "cas"], spec));
    assert!(out.contains("expected depth: 8"));
    let v = json(&bei_stdin(&["check", "-i", "-", "--cutset", "0,3"], spec));
    assert_eq!(v["cutset"]["is_cutset"], true);
    assert_eq!(v["cutset"]["components"], 3);
    assert!(v["cutset"]["structure"]
        .as_array()
        .unwrap()
        .iter()
        .all(|a| a["holds"] == true));
}

#[test]
fn cutsets_as_jsonl() {
    let out = stdout(&bei(&["cutsets", "P3", "--out", "jsonl"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines,
        vec![r#"{"cutset":[],"components":1}"#, r#"{"cutset":[1],"components":2}"#]
    );
}

#[test]
fn witness_chain() {
    let o = bei(&["check", "P4", "--chain", "1,2"]);
    assert_eq!(o.status.code(), Some(5));
    let v = json(&bei(&["check", "P5", "--chain", "1,3"]));
    assert_eq!(v["chain"].as_array().unwrap().len(), 2);
}

#[test]
fn gadget_verification() {
    let v = json(&bei(&["gadget", "d3", "P3", "--verify"]));
    assert_eq!(v["gadget_order"], 9);
    assert_eq!(v["diameter_ok"], true);
    assert_eq!(v["accessible_transfer_ok"], true);
    assert_eq!(v["stated_mismatches"].as_array().unwrap().len(), 6);
    assert_eq!(v["corrected_cases_ok"], true);
    let v = json(&bei(&["gadget", "d2", "K1"]));
    assert_eq!(v["n"], 3);
    assert_eq!(v["diameter"], 2);
}

#[test]
fn gadget_rejects_inaccessible_pendant() {
    let o = bei(&["gadget", "d2", "C4", "--verify"]);
    assert_eq!(o.status.code(), Some(5));
    assert_eq!(error_json(&o)["error"]["kind"], "validation");
}

#[test]
fn scan_reports_bad_lines_and_continues() {
    let dir = tempfile::tempdir().unwrap();
    let cas = dir.path().join("scripts");
    let o = bei_stdin(&["scan", "--cas-dir", cas.to_str().unwrap()], "C~\n\nbad!\nCF\n");
    let out = stdout(&o);
    let records: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0]["accessible"], true);
    assert_eq!(records[1]["unmixed"], false);
    let err: Value = serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).unwrap();
    assert_eq!(err["error"]["line"], 3);
    let script = records[0]["cas_script_path"].as_str().unwrap();
    assert!(cas.join(script).exists());
    assert!(records[1]["cas_script_path"].is_null());
}

#[test]
fn scan_filters_by_diameter() {
    let out = stdout(&bei_stdin(&["scan", "--diameter", "2"], "C~\nCF\nCU\n"));
    assert!(out.lines().all(|l| l.contains(r#""diameter":2"#)));
    assert!(stdout(&bei_stdin(&["scan"], "")).is_empty());
}

#[test]
fn errors_are_json_with_exit_codes() {
    let o = bei(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"]["kind"], "usage");

    let o = bei(&["construct", "Q?"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_json(&o)["error"]["kind"], "input");

    let o = bei(&["--bound", "5", "cutsets", "K6"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(error_json(&o)["error"]["kind"], "bound");

    let o = bei(&["construct"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bound_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_bei"))
        .args(["cutsets", "K6"])
        .env("BEI_BOUND", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
}
