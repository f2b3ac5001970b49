use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

const BIN: &str = env!("CARGO_BIN_EXE_biphoton");

fn biphoton(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn matrix_json(rows: usize, cols: usize, entries: &[(f64, f64)]) -> Value {
    json!({ "rows": rows, "cols": cols, "data": entries.iter().map(|&(re, im)| [re, im]).collect::<Vec<_>>() })
}

fn write(dir: &Path, name: &str, value: &Value) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string(value).unwrap()).unwrap();
    path
}

fn bell_state() -> Value {
    let h = 0.5 * std::f64::consts::FRAC_1_SQRT_2;
    let mut e = vec![(0.0, 0.0); 16];
    for (i, j) in [(0, 2), (2, 0), (1, 3), (3, 1)] {
        e[i * 4 + j] = (h, 0.0);
    }
    matrix_json(4, 4, &e)
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn rank_of_bell_state_is_four() {
    let dir = tempfile::tempdir().unwrap();
    let state = write(dir.path(), "bell.json", &bell_state());
    let out = biphoton(&["rank", "--state", p(&state)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), json!(4));
}

#[test]
fn cz_gate_reports_one_ninth() {
    let out = biphoton(&["gate-cnz", "--n", "2", "--phi", "3.141592653589793"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert!((doc["success_probability"].as_f64().unwrap() - 1.0 / 9.0).abs() < 1e-12);
    assert_eq!(doc["kind"], "cnz");
    assert_eq!(doc["unitary"]["rows"], 8);
}

#[test]
fn heralded_rank_three_from_two_photons_is_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let target = write(dir.path(), "t.json", &matrix_json(3, 3, &[(0.6, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.5, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.3, 0.0)]));
    let out = biphoton(&["synth-herald", "--target", p(&target), "--photons", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("rank 3"));
}

/// Synthesizes to a file, re-verifies it, and compares the recomputed success
/// probability with the reported one.
fn round_trip(dir: &Path, synth: &[&str]) -> f64 {
    let doc_path = dir.join("doc.json");
    let mut args = synth.to_vec();
    args.extend(["--output", p(&doc_path)]);
    let out = biphoton(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&doc_path).unwrap()).unwrap();

    let out = biphoton(&["verify", "--input", p(&doc_path)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let verdict = stdout_json(&out);
    assert_eq!(verdict["passed"], true);
    let reported = doc["success_probability"].as_f64().unwrap();
    let recomputed = verdict["success_probability"].as_f64().unwrap();
    assert!((reported - recomputed).abs() < 1e-12, "{reported} vs {recomputed}");
    reported
}

#[test]
fn documents_round_trip_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let photons = write(d, "photons.json", &matrix_json(2, 2, &[(0.0, 0.0), (1.0, 0.0), (1.0, 0.0), (0.0, 0.0)]));
    let bell_c = write(d, "c.json", &matrix_json(2, 2, &[(r, 0.0), (0.0, 0.0), (0.0, 0.0), (r, 0.0)]));
    let bell = write(d, "bell.json", &bell_state());

    let ps = round_trip(d, &["synth-postselect", "--input", p(&photons), "--target", p(&bell_c)]);
    assert!((ps - 0.5).abs() < 1e-12);
    let hb = round_trip(d, &["synth-herald", "--target", p(&bell), "--photons", "4"]);
    assert!(hb > 0.0 && hb < 1.0);
    let cz = round_trip(d, &["gate-cnz", "--n", "3", "--phi", "-1.0"]);
    assert!(cz > 0.0 && cz < 1.0);
}

#[test]
fn verify_rejects_a_document_for_another_phase() {
    let dir = tempfile::tempdir().unwrap();
    let out = biphoton(&["gate-cnz", "--n", "2", "--phi", "3.141592653589793"]);
    let mut doc = stdout_json(&out);
    doc["phi"] = json!(1.0);
    let path = write(dir.path(), "doc.json", &doc);
    let out = biphoton(&["verify", "--input", p(&path)]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout_json(&out)["passed"], false);
}

#[test]
fn malformed_inputs_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let short = write(dir.path(), "short.json", &json!({ "rows": 2, "cols": 2, "data": [[1.0, 0.0]] }));
    let out = biphoton(&["rank", "--state", p(&short)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("state.data"));

    let asymmetric = write(dir.path(), "asym.json", &matrix_json(2, 2, &[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]));
    assert_eq!(biphoton(&["takagi", "--input", p(&asymmetric)]).status.code(), Some(2));

    let out = biphoton(&["gate-cnz", "--n", "2", "--phi", "3.141592653589793"]);
    let mut doc = stdout_json(&out);
    doc["unitary"]["data"][0][0] = json!(0.9);
    let path = write(dir.path(), "doc.json", &doc);
    let out = biphoton(&["verify", "--input", p(&path)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unitary"));
}

#[test]
fn takagi_output_diagonalizes_the_input() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "s.json", &matrix_json(2, 2, &[(0.0, 0.0), (0.5, 0.0), (0.5, 0.0), (0.0, 0.0)]));
    let out = biphoton(&["takagi", "--input", p(&s)]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let d: Vec<f64> = serde_json::from_value(doc["d"].clone()).unwrap();
    assert!((d[0] - 0.5).abs() < 1e-12 && (d[1] - 0.5).abs() < 1e-12);
}
