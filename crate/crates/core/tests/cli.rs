//! End-to-end behaviour of the `workbench` binary: outputs, exit codes and
//! determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn workbench(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_workbench"));
    cmd.args(args).env_remove("WORKBENCH_THREADS");
    if let Some(t) = threads {
        cmd.env("WORKBENCH_THREADS", t);
    }
    cmd.output().expect("spawn workbench")
}

fn run(args: &[&str]) -> Output {
    workbench(args, None)
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout))
    })
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("workbench-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn symbolic_a_in_b() {
    let o = run(&["symbolic", "a-in-b", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "b0^2 - b1");
    let o = run(&["symbolic", "a-in-b", "--n", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn coeffs_invert_round_trip() {
    let dir = scratch("invert");
    let input = dir.join("a.json");
    std::fs::write(&input, "[[2,0],[3,0]]").unwrap();
    let o = run(&["coeffs", "invert", "--direction", "s2sigma", "--input", p(&input)]);
    assert_eq!(code(&o), 0);
    let b = stdout_json(&o);
    assert_eq!(b[0][0].as_f64(), Some(-2.0));
    assert_eq!(b[1][0].as_f64(), Some(1.0));

    let sigma = dir.join("b.json");
    std::fs::write(&sigma, serde_json::to_string(&b).unwrap()).unwrap();
    let o = run(&["coeffs", "invert", "--direction", "sigma2s", "--input", p(&sigma)]);
    assert_eq!(code(&o), 0);
    let a = stdout_json(&o);
    assert_eq!(a[0][0].as_f64(), Some(2.0));
    assert_eq!(a[1][0].as_f64(), Some(3.0));
}

#[test]
fn family_emit_then_eval() {
    let dir = scratch("emit");
    let out = dir.join("koebe.json");
    let o = run(&["family", "emit", "--name", "koebe", "--order", "8", "--out", p(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let sample: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(sample["family"], "koebe");
    assert_eq!(sample["coeffs"][0][0], "2");

    let o = run(&["functional", "eval", "--name", "zalcman", "--n", "3", "--input", p(&out)]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    for key in ["value", "modulus", "bound", "slack"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["modulus"].as_f64(), Some(4.0));
    assert_eq!(v["bound"].as_f64(), Some(4.0));
    assert_eq!(v["slack"].as_f64(), Some(0.0));
    assert_eq!(v["value"].as_array().map(Vec::len), Some(2));
}

#[test]
fn family_emit_root_transform() {
    let dir = scratch("root");
    let out = dir.join("root.json");
    let o = run(&["family", "emit", "--name", "koebe_root", "--m", "3", "--theta", "0", "--order", "8", "--out", p(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let sample: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    // a_4 = 2/3 and a_7 = 5/9, every other coefficient vanishes
    let coeffs = sample["coeffs"].as_array().unwrap();
    assert_eq!(coeffs[2][0], "2/3");
    assert_eq!(coeffs[5][0], "5/9");
    assert_eq!(coeffs[0][0], "0");
}

#[test]
fn missing_input_is_io_error() {
    let o = run(&["functional", "eval", "--name", "zalcman", "--n", "3", "--input", "/nonexistent/sample.json"]);
    assert_eq!(code(&o), 2);
    assert!(!o.stderr.is_empty());
}

#[test]
fn lemma_check_keys_and_codes() {
    let o = run(&["metric", "check-lemma33", "--m", "1", "--c", "0.5", "--grid", "0.05:0.9:0.01"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    for key in ["min_margin", "curvature_max_violation", "hypothesis_fit_residual"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v["min_margin"].as_f64().unwrap() >= 0.0);

    // Scaled metric misses the asymptotic hypothesis: mathematical failure.
    let o = run(&["metric", "check-lemma33", "--m", "1", "--c", "0.5", "--grid", "0.05:0.9:0.01", "--scale", "0.9"]);
    assert_eq!(code(&o), 1);
    assert!(stdout_json(&o)["min_margin"].is_null());

    // Grid too coarse for the stencil: configuration error.
    let o = run(&["metric", "check-lemma33", "--m", "1", "--c", "0.5", "--grid", "0.05:0.9:0.05"]);
    assert_eq!(code(&o), 2);

    let o = run(&["metric", "check-lemma33", "--m", "1", "--c", "0.5", "--grid", "nonsense"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn bad_experiment_and_config() {
    assert_eq!(code(&run(&["scan", "bogus"])), 2);
    let dir = scratch("config");
    let cfg = dir.join("bad.json");
    std::fs::write(&cfg, r#"{"samples": 3, "unknown_field": true}"#).unwrap();
    assert_eq!(code(&run(&["scan", "zalcman", "--config", p(&cfg)])), 2);
    std::fs::write(&cfg, "not json").unwrap();
    assert_eq!(code(&run(&["scan", "zalcman", "--config", p(&cfg)])), 2);
    assert_eq!(code(&run(&["scan", "ratio", "--mode", "exact"])), 2);
}

#[test]
fn threads_env_is_validated() {
    let o = workbench(&["scan", "golden"], Some("abc"));
    assert_eq!(code(&o), 2);
    let o = workbench(&["scan", "golden"], Some("0"));
    assert_eq!(code(&o), 2);
}

fn scan_report(args: &[&str], threads: Option<&str>) -> Value {
    let o = workbench(args, threads);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut v = stdout_json(&o);
    v["wall_clock_ms"] = Value::from(0);
    v
}

#[test]
fn report_schema() {
    let v = scan_report(&["scan", "zalcman", "--samples", "20", "--mode", "float", "--n", "3..5"], None);
    for key in ["version", "experiment", "config", "extrema", "witnesses", "violations", "warnings"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["experiment"], "zalcman");
    assert_eq!(v["config"]["samples"], 20);
    assert!(v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn scans_are_deterministic() {
    let args = ["scan", "zalcman", "--samples", "40", "--seed", "7", "--mode", "float", "--n", "3..6"];
    let a = scan_report(&args, None);
    let b = scan_report(&args, None);
    assert_eq!(a, b);
    let one = scan_report(&args, Some("1"));
    let four = scan_report(&args, Some("4"));
    assert_eq!(one, four);
    assert_eq!(a, one);

    let exact = ["scan", "distortion", "--samples", "15", "--seed", "3", "--n", "3..4", "--p", "1,2"];
    assert_eq!(scan_report(&exact, Some("1")), scan_report(&exact, Some("3")));

    let other = scan_report(&["scan", "zalcman", "--samples", "40", "--seed", "8", "--mode", "float", "--n", "3..6"], None);
    assert_ne!(a["witnesses"], other["witnesses"]);
}

#[test]
fn csv_export() {
    let dir = scratch("csv");
    let csv = dir.join("z.csv");
    let json = dir.join("z.json");
    let o = run(&["scan", "zalcman", "--samples", "10", "--mode", "float", "--n", "3,4", "--csv", p(&csv), "--out", p(&json)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut reader = csv::Reader::from_path(&csv).unwrap();
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["id", "family", "params", "n", "p", "modulus", "bound", "slack"]);
    let rows: Vec<csv::StringRecord> = reader.records().collect::<Result<_, _>>().unwrap();
    assert!(!rows.is_empty());
    for row in &rows {
        let n: usize = row[3].parse().unwrap();
        assert!(n == 3 || n == 4);
        let modulus: f64 = row[5].parse().unwrap();
        let bound: f64 = row[6].parse().unwrap();
        let slack: f64 = row[7].parse().unwrap();
        assert!((bound - modulus - slack).abs() <= 1e-9 * bound);
    }
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["experiment"], "zalcman");
}

#[test]
fn golden_scan_passes() {
    let o = run(&["scan", "golden"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert!(v["violations"].as_array().unwrap().is_empty());
    let warnings = v["warnings"].as_array().unwrap();
    assert!(warnings.len() >= 2);
}
