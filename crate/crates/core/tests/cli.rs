use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twonorm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const GRAM3: &str = r#"{"kind": "euclidean_gram", "dim": 3}"#;

#[test]
fn check_axioms_gram() {
    let dir = tempfile::tempdir().unwrap();
    let space = write(dir.path(), "space.json", GRAM3);
    let out = run(&["check-axioms", &space, "--samples", "1000", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["axioms"]["samples"], 1000);
    assert!(v["axioms"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn check_axioms_polynomial_file_with_settings() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "space.json",
        r#"{"space": {"kind": "white_polynomial", "degree": 2, "points": [0.0, 0.2, 0.4, 0.6]},
            "samples": 200, "seed": 3}"#,
    );
    let out = run(&["check-axioms", &file]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["axioms"]["samples"], 200);
}

#[test]
fn solve_two_target_example() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "problem.json",
        r#"{"space": {"kind": "euclidean_gram", "dim": 3},
            "targets": [[1, 0, 0], [-1, 0, 0]], "g_basis": [[1, 0, 0]], "b": [0, 0, 1],
            "solver": {"max_iters": 20000, "tol": 1e-6, "restarts": 8, "seed": 1, "step0": 1.0}}"#,
    );
    let out = run(&["solve", &file, "--radius", "2", "--resolution", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    for c in v["g_star"].as_array().unwrap() {
        assert!(c.as_f64().unwrap().abs() < 1e-9);
    }
    assert_eq!(v["converged"], Value::Bool(true));
    assert_eq!(v["per_restart"].as_array().unwrap().len(), 8);
    assert!(v["spread"].is_number());
    assert!((v["oracle"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-3);
    // 17 significant digits
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.contains("\"value\":1.0000000000000000e0"), "{text}");
}

#[test]
fn solve_missing_file() {
    let out = run(&["solve", "missing.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["error"].is_string());
    assert!(!out.stderr.is_empty());
}

#[test]
fn malformed_problem_names_field() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "bad.json",
        r#"{"space": {"kind": "euclidean_gram", "dim": 3}, "targets": [[1, 0, "x"]], "b": [0, 0, 1]}"#,
    );
    let out = run(&["solve", &file]);
    assert_eq!(out.status.code(), Some(1));
    let msg = json(&out)["error"].as_str().unwrap().to_string();
    assert!(msg.contains("targets[0][2]"), "{msg}");
}

#[test]
fn non_convergence_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "problem.json",
        r#"{"space": {"kind": "white_polynomial", "degree": 2, "points": [0.0, 0.2, 0.4, 0.6]},
            "targets": [[0.2, -0.4, 1.0]], "g_basis": [[0, 0, 1]], "b": [1.0, 0.5, 0.0]}"#,
    );
    let out = run(&["solve", &file, "--max-iters", "2", "--restarts", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["converged"], Value::Bool(false));
}

#[test]
fn dependent_direction_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "problem.json",
        r#"{"space": {"kind": "euclidean_gram", "dim": 3},
            "targets": [[1, 0, 0]], "g_basis": [[0, 1, 0]], "b": [1, 1, 0]}"#,
    );
    assert_eq!(run(&["solve", &file]).status.code(), Some(1));
}

#[test]
fn distance_point_and_set() {
    let dir = tempfile::tempdir().unwrap();
    let point = write(
        dir.path(),
        "d.json",
        &format!(r#"{{"space": {GRAM3}, "x0": [1, 1, 0], "w_basis": [[1, 0, 0]], "b": [0, 0, 1]}}"#),
    );
    let v = json(&run(&["distance", &point]));
    assert!((v["delta"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((v["w_star"][0].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let set = write(
        dir.path(),
        "s.json",
        &format!(r#"{{"space": {GRAM3}, "a_set": [[1, 0, 0], [-1, 0, 0]], "w_basis": [[1, 0, 0]], "b": [0, 0, 1]}}"#),
    );
    let v = json(&run(&["distance", &set]));
    assert!((v["set_distance"].as_f64().unwrap() - 1.0).abs() < 1e-9);

    let both = write(
        dir.path(),
        "both.json",
        &format!(r#"{{"space": {GRAM3}, "x0": [1, 0, 0], "a_set": [[1, 0, 0]], "b": [0, 0, 1]}}"#),
    );
    assert_eq!(run(&["distance", &both]).status.code(), Some(1));
}

#[test]
fn certificate_command() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "c.json",
        &format!(r#"{{"space": {GRAM3}, "x0": [0, 1, 0], "w_basis": [[1, 0, 0]], "b": [0, 0, 1]}}"#),
    );
    let out = run(&["certificate", &file, "--samples", "500"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], Value::Bool(true));
    assert!((v["certificate"]["delta"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["check"]["probes"], 500);

    let inside = write(
        dir.path(),
        "in.json",
        &format!(r#"{{"space": {GRAM3}, "x0": [3, 0, 0], "w_basis": [[1, 0, 0]], "b": [0, 0, 1]}}"#),
    );
    assert_eq!(run(&["certificate", &inside]).status.code(), Some(1));
}

#[test]
fn blend_command() {
    let dir = tempfile::tempdir().unwrap();
    let flat = write(
        dir.path(),
        "blend.json",
        &format!(
            r#"{{"space": {GRAM3}, "targets": [[0.7, -0.4, 0.2]], "g_basis": [[1, 0, 0], [0, 0, 1]],
                "b": [0, 0, 1], "g1": [0.7, 0, -3], "g2": [0.7, 0, 5]}}"#
        ),
    );
    let out = run(&["blend", &flat]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["entries"].as_array().unwrap().len(), 11);

    let unequal = write(
        dir.path(),
        "unequal.json",
        &format!(
            r#"{{"space": {GRAM3}, "targets": [[0.7, -0.4, 0.2]], "g_basis": [[1, 0, 0]],
                "b": [0, 0, 1], "g1": [0.7, 0, 0], "g2": [0, 0, 0]}}"#
        ),
    );
    assert_eq!(run(&["blend", &unequal]).status.code(), Some(1));
}

#[test]
fn uniqueness_command() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "u.json",
        &format!(r#"{{"space": {GRAM3}, "targets": [[2, 0, 0], [0, 2, 0]], "g_basis": [[1, 0, 0], [0, 1, 0]], "b": [0, 0, 1]}}"#),
    );
    let out = run(&["uniqueness", &file, "--restarts", "16"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["distinct_optimizers"], 1);
    assert_eq!(v["optimizers"].as_array().unwrap().len(), 16);
}

#[test]
fn sequence_command() {
    let dir = tempfile::tempdir().unwrap();
    let elements: Vec<String> = (1..=20).map(|n| format!("[{}, 0, 0]", 1.0 + 1.0 / n as f64)).collect();
    let file = write(
        dir.path(),
        "seq.json",
        &format!(
            r#"{{"space": {GRAM3}, "elements": [{}], "probes": {{"y": [0, 1, 0], "z": [0, 0, 1]}},
                "limit": [1, 0, 0], "probe_dirs": [[0, 1, 0], [1, 0, 0]]}}"#,
            elements.join(",")
        ),
    );
    let out = run(&["sequence", &file]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["cauchy"].as_array().unwrap().len(), 19);
    assert_eq!(v["cauchy_monotone"], Value::Bool(true));
    assert_eq!(v["convergence"][1]["blind"], Value::Bool(true));
    assert!(v["norm_limit"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn same_seed_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "p.json",
        r#"{"space": {"kind": "white_polynomial", "degree": 2, "points": [0.0, 0.2, 0.4, 0.6]},
            "targets": [[0.2, -0.4, 1.0]], "g_basis": [[0, 0, 1]], "b": [1.0, 0.5, 0.0]}"#,
    );
    let a = run(&["solve", &file, "--seed", "9"]);
    let b = run(&["solve", &file, "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
