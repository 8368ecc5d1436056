//! End-to-end checks of the command-line interface: output schemas,
//! determinism, and the exit-code contract.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curlicue"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn sum_both_methods_agree() {
    let text = stdout(&[
        "sum", "--n", "20000", "--a", "0.7052301", "--b", "0.31", "--method", "both",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["command"], "sum");
    let residual = v["outputs"]["residual"].as_f64().unwrap();
    assert!(residual < 1e-7, "residual {residual}");
    assert!(v["outputs"]["renorm"]["depth"].as_u64().unwrap() > 3);
}

#[test]
fn trace_csv_schema() {
    let text = stdout(&["trace", "--n", "100000", "--a", "0.618033988749", "--b", "0.25"]);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "l,a_l,b_l,n_l,xi_l,theta_l,parity,term_re,term_im"
    );
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() >= 10, "{} cascade rows", rows.len());
    assert!(rows[0].starts_with("0,"));
}

#[test]
fn special_fn_reports_error_estimate() {
    let text = stdout(&["special-fn", "--xi", "0.3", "--a", "0.05"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let err = v["outputs"]["calF"]["err_estimate"].as_f64().unwrap();
    assert!(err > 0.0 && err < 1e-8);
    let val = &v["outputs"]["calF"]["value"];
    assert!(val[0].as_f64().unwrap().is_finite());
}

#[test]
fn growth_csv_rows() {
    let text = stdout(&["growth", "--a", "0.5477", "--b", "0.1", "--lmax", "4"]);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("L,M,key"));
    assert!(lines.len() >= 4);
}

#[test]
fn dynamics_norms_deterministic_given_seed() {
    let args = [
        "dynamics", "norms", "--phi", "(l+2)^-1/6", "--depth", "200", "--samples", "2000",
        "--seed", "42",
    ];
    let first = stdout(&args);
    let second = stdout(&args);
    assert_eq!(first, second, "same seed must give identical bytes");
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["seed"], 42);
    assert!(v["outputs"][1]["norm1"].as_f64().unwrap() > 0.0);
}

#[test]
fn dynamics_different_seed_differs() {
    let base = [
        "dynamics", "norms", "--phi", "(l+2)^-1/6", "--depth", "100", "--samples", "500",
    ];
    let a = stdout(&[&base[..], &["--seed", "1"]].concat());
    let b = stdout(&[&base[..], &["--seed", "2"]].concat());
    assert_ne!(a, b);
}

#[test]
fn ba_orbit_reports_stabilization() {
    let text = stdout(&["dynamics", "ba-orbit", "--a", "0.5877852522", "--m", "3", "--n", "2"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["outputs"]["stabilized"], true);
    assert_eq!(v["outputs"]["transitions_ok"], true);
}

#[test]
fn curlicue_csv_to_file() {
    let dir = std::env::temp_dir().join("curlicue_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("path.csv");
    let _ = stdout(&[
        "curlicue", "--n", "500", "--a", "0.31830988", "--b", "0.0",
        "--out", path.to_str().unwrap(), "--annotate",
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,re,im,depth,a_last"));
    assert_eq!(text.lines().count(), 502);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn exit_code_domain_error() {
    let out = run(&["sum", "--n", "10", "--a", "1.5", "--b", "0.0"]);
    assert_eq!(out.status.code(), Some(2), "a outside (0,1) is a domain error");
}

#[test]
fn exit_code_io_error() {
    let out = run(&[
        "curlicue", "--n", "10", "--a", "0.3", "--b", "0.0",
        "--out", "/nonexistent_dir_zzz/file.csv",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn exit_code_precision_error() {
    let out = run(&["sum", "--n", "10", "--a", "0.3", "--b", "0.0", "--bits", "200"]);
    assert_eq!(out.status.code(), Some(3), "bits beyond the backend is a precision error");
}

#[test]
fn bench_csv() {
    let text = stdout(&["bench", "--ns", "1000,100000", "--a", "0.7", "--b", "0.1", "--reps", "1"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,method,wall_ns,value_re,value_im,residual");
    assert_eq!(lines.len(), 5); // two N values x two methods + header
}
