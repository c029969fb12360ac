//! End-to-end tests of the `biasgraph` binary: file round trips, output
//! schema, exit codes, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_biasgraph"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn gen_writes_edge_list_and_sidecar() {
    let path = tmp("circ.txt");
    let out = bin()
        .args([
            "gen",
            "--family",
            "circulant",
            "--n",
            "8",
            "--offsets",
            "1,2",
            "--out",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("8 16\n"));
    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp("circ.txt.json")).unwrap()).unwrap();
    assert_eq!(sidecar["spec"]["family"], "circulant");
    assert_eq!(sidecar["m"], 16);
}

#[test]
fn ow_certificate_schema() {
    let path = tmp("tri.txt");
    std::fs::write(&path, "3 3\n0 1\n1 2\n2 0\n").unwrap();
    let out = bin().args(["ow", "--input"]).arg(&path).output().unwrap();
    assert!(out.status.success());
    let cert: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(cert["kind"], "oneway");
    assert_eq!(cert["gamma"], "0/1");
    assert_eq!(cert["value"], 1);
    assert_eq!(cert["e_ba"], 0);
    assert_eq!(cert["exact"], true);
    assert!(cert["A"].is_array() && cert["B"].is_array());
}

#[test]
fn bias_exact_and_heuristic() {
    let path = tmp("tt3.txt");
    std::fs::write(&path, "3 3\n0 1\n0 2\n1 2\n").unwrap();
    let out = bin()
        .args(["bias", "--gamma", "1/2", "--input"])
        .arg(&path)
        .output()
        .unwrap();
    let cert: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(cert["value"], 3);
    assert_eq!(cert["gamma"], "1/2");
    assert_eq!(cert["exact"], true);

    let out = bin()
        .args(["bias", "--heuristic", "--iterations", "16", "--seed", "7", "--input"])
        .arg(&path)
        .output()
        .unwrap();
    let cert: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(cert["exact"], false);
    assert!(cert["value"].as_u64().unwrap() <= 3);
}

#[test]
fn greedy_writes_trace_csv() {
    let graph = tmp("c12.txt");
    let trace = tmp("c12-trace.csv");
    bin()
        .args(["gen", "--family", "circulant", "--n", "12", "--offsets", "1,2,3", "--out"])
        .arg(&graph)
        .output()
        .unwrap();
    let out = bin()
        .args(["greedy", "--input"])
        .arg(&graph)
        .arg("--trace-csv")
        .arg(&trace)
        .output()
        .unwrap();
    assert!(out.status.success());
    let payload: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(payload["certificate"]["e_ba"], 0);
    let csv = std::fs::read_to_string(&trace).unwrap();
    assert!(csv.starts_with("t,chosen_vertex,e2\n"));
    assert_eq!(csv.lines().count(), 1 + payload["steps"].as_u64().unwrap() as usize);
}

#[test]
fn samplers_are_deterministic() {
    let graph = tmp("c16.txt");
    bin()
        .args(["gen", "--family", "circulant", "--n", "16", "--offsets", "1", "--out"])
        .arg(&graph)
        .output()
        .unwrap();
    let run = || {
        let out = bin()
            .args(["sample-ow", "--p", "1/4", "--trials", "64", "--seed", "5", "--input"])
            .arg(&graph)
            .output()
            .unwrap();
        stdout(&out)
    };
    assert_eq!(run(), run());
    let out = bin()
        .args(["banded-ow", "--trials", "32", "--seed", "5", "--input"])
        .arg(&graph)
        .output()
        .unwrap();
    let payload: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(payload["band"]["size"], 16);
}

#[test]
fn cycles_and_hom_commands() {
    let graph = tmp("c6.txt");
    bin()
        .args(["gen", "--family", "circulant", "--n", "6", "--offsets", "1", "--out"])
        .arg(&graph)
        .output()
        .unwrap();
    let out = bin()
        .args(["cycles", "--k", "6", "--mode", "simple", "--stats", "--input"])
        .arg(&graph)
        .output()
        .unwrap();
    let payload: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(payload["count"], 1);
    assert_eq!(payload["stats"]["two_path_total"], 6);

    let pattern = tmp("p3.txt");
    std::fs::write(&pattern, "3 3\n0 1 >\n1 2 >\n2 0 >\n").unwrap();
    let out = bin()
        .args(["hom", "--check-dense", "--epsilon", "1/2", "--input"])
        .arg(&graph)
        .arg("--pattern")
        .arg(&pattern)
        .output()
        .unwrap();
    let payload: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(payload["count"], 0); // no directed triangle in a 6-cycle
    assert_eq!(payload["dense_check"]["pass"], true);
}

#[test]
fn verify_suite_and_probe_exit_zero() {
    let out = bin()
        .args(["verify", "--suite", "polarity"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("PASS"));

    let out = bin()
        .args(["verify", "--suite", "two-paths", "--limit-n", "3", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["summary"]["failures"], 0);

    let out = bin()
        .args([
            "probe", "--target", "ow-c4", "--exhaustive-n", "3", "--max-n", "0", "--seeds", "0",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("frontier"));
}

#[test]
fn usage_errors_exit_two() {
    // Unknown suite.
    let out = bin().args(["verify", "--suite", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Malformed input file (digon).
    let path = tmp("bad.txt");
    std::fs::write(&path, "2 2\n0 1\n1 0\n").unwrap();
    let out = bin().args(["ow", "--input"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("digon"));
    // Missing file.
    let out = bin().args(["ow", "--input", "/definitely/missing"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Clap-level usage error.
    let out = bin().args(["bias"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // Exhaustive limit exceeded.
    let big = tmp("big.txt");
    let mut text = String::from("30 29\n");
    for i in 0..29 {
        text.push_str(&format!("{} {}\n", i, i + 1));
    }
    std::fs::write(&big, text).unwrap();
    let out = bin().args(["ow", "--input"]).arg(&big).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reads_stdin_dash() {
    use std::io::Write as _;
    let mut child = bin()
        .args(["ow", "--input", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::null())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"2 1\n0 1\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let cert: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(cert["value"], 1);
}
