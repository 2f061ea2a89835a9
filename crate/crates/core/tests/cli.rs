use std::path::{Path, PathBuf};
use std::process::Command;

use qreduce::cli::run;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qreduce").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn compile_br_writes_thresholds() {
    let (code, out, _) = call(&[
        "compile-br",
        "--in",
        s(&data("or2.json")),
        "--g",
        "1",
        "--gprime",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "c h 54"));
    assert!(out.lines().any(|l| l == "c hprime 6"));
    assert!(out.lines().any(|l| l.starts_with("p cnf 23 ")));
}

#[test]
fn unknown_flag_is_usage_error() {
    let (code, _, err) = call(&["bfs", "--in", s(&data("or2.json")), "--bogus"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
    let (code, _, _) = call(&["no-such-command"]);
    assert_eq!(code, 2);
}

#[test]
fn missing_input_is_runtime_error() {
    let (code, _, err) = call(&["bfs", "--in", "/nonexistent/file.cnf"]);
    assert_eq!(code, 3);
    assert!(!err.is_empty());
}

#[test]
fn br_honest_path_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("or2.cnf");
    let path = dir.path().join("path.json");
    let (code, _, _) = call(&[
        "compile-br",
        "--in",
        s(&data("or2.json")),
        "--g",
        "1",
        "--gprime",
        "2",
        "--out",
        s(&cnf),
    ]);
    assert_eq!(code, 0);
    let (code, _, _) = call(&["honest-path", "--in", s(&cnf), "--out", s(&path)]);
    assert_eq!(code, 0);
    let (code, out, _) = call(&["verify-path", "--in", s(&cnf), s(&path)]);
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ok"], true);
    assert_eq!(v["length"], 56);

    let (code, out, _) = call(&["bfs", "--in", s(&cnf)]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["length"], 54);
    assert_eq!(v["result"]["status"], "found");
}

#[test]
fn verify_failure_prints_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("or2.cnf");
    let path = dir.path().join("path.json");
    call(&[
        "compile-br",
        "--in",
        s(&data("or2.json")),
        "--g",
        "1",
        "--gprime",
        "2",
        "--out",
        s(&cnf),
    ]);
    call(&["honest-path", "--in", s(&cnf), "--out", s(&path)]);
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let flips = doc["path"].as_array_mut().unwrap();
    flips.truncate(flips.len() / 2);
    let len = flips.len();
    doc["length"] = len.into();
    std::fs::write(&path, doc.to_string()).unwrap();
    let (code, out, _) = call(&["verify-path", "--in", s(&cnf), s(&path)]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ok"], false);
    assert_eq!(v["ends_at_target"], false);
}

#[test]
fn gscon_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("copy.gscon.json");
    let path = dir.path().join("path.json");
    let (code, _, err) = call(&[
        "compile-gscon",
        "--in",
        s(&data("copy.json")),
        "--g",
        "1",
        "--gprime",
        "1",
        "--out",
        s(&inst),
    ]);
    assert_eq!(code, 0, "{err}");
    let (code, _, err) = call(&["honest-path", "--in", s(&inst), "--out", s(&path)]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = call(&["verify-path", "--in", s(&inst), s(&path)]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = call(&["xflip-bound", "--in", s(&inst)]);
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["min_gates"], 12);
}

#[test]
fn kitaev_ground_energy_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let kit = dir.path().join("reject.kitaev.json");
    let (code, _, err) = call(&[
        "compile-kitaev",
        "--in",
        s(&data("reject_all.json")),
        "--out",
        s(&kit),
    ]);
    assert_eq!(code, 0, "{err}");
    let (code, out, err) = call(&["ground-energy", "--in", s(&kit)]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    let e = v["value"]
        .as_f64()
        .or(v["energy"].as_f64())
        .expect("energy field");
    assert!(
        (e - (1.0 - std::f64::consts::FRAC_1_SQRT_2)).abs() < 1e-8,
        "{out}"
    );
    let (code, out, err) = call(&["report", "--in", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(!out.is_empty());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qreduce");
    let st = Command::new(bin).args(["bfs", "--bogus"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    let st = Command::new(bin)
        .args([
            "compile-br",
            "--in",
            s(&data("or2.json")),
            "--g",
            "1",
            "--gprime",
            "2",
        ])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&st.stdout).contains("c h 54"));
}
