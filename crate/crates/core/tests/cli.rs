use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fuzzy-cesaro"))
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/configs").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_body(out: &Output) -> Value {
    let v: Value = serde_json::from_slice(&out.stdout).expect("JSON report");
    v["body"].clone()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write_config(dir: &tempfile::TempDir, text: &str) -> PathBuf {
    let path = dir.path().join("job.json");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn verify_paper_default_runs_every_experiment() {
    let cfg = config("default.json");
    let out = run(&["verify-paper", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let body = json_body(&out);
    let experiments = body["experiments"].as_array().unwrap();
    assert!(experiments.len() >= 6);
    assert_eq!(body["summary"]["inconsistent"], 0);
    for e in experiments {
        assert!(e["name"].is_string() && e["claim"].is_string() && e["verdict"].is_string());
    }
}

#[test]
fn inverted_expectation_exits_nonzero() {
    let cfg = config("inverted.json");
    let out = run(&["verify-paper", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let body = json_body(&out);
    let solidity = body["experiments"].as_array().unwrap().iter().find(|e| e["name"] == "solidity").unwrap();
    assert_eq!(solidity["verdict"], "inconsistent");
}

#[test]
fn metric_euclidean() {
    let cfg = config("euclidean.json");
    let out = run(&["metric", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let body = json_body(&out);
    assert!((body["f_metric_value"].as_f64().unwrap() - 5.0).abs() < 1e-10);
    assert!((body["eta_metric"].as_f64().unwrap() - 5.0).abs() < 1e-10);

    let out = run(&["metric", "v", "v", "--config", cfg.to_str().unwrap()]);
    assert_eq!(json_body(&out)["f_metric_value"], 0.0);
}

#[test]
fn metric_decaying_sequence_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, r#"{"space": {"family": "Cinf", "m": 3, "n": 1, "orlicz": {"cube": {}}}}"#);
    let out = run(&["metric", "convergence_free_x", "zero", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let rows = json_body(&out)["by_n"].as_array().unwrap().clone();
    let values: Vec<f64> = rows.iter().map(|r| r["f_metric"].as_f64().unwrap()).collect();
    assert_eq!(values.len(), 3);
    assert!(values.windows(2).all(|w| (w[1] - w[0]).abs() <= 0.1 * w[0]), "{values:?}");
}

#[test]
fn unknown_sequence_is_a_config_error() {
    let out = run(&["metric", "zero", "nowhere"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("metric.y"), "{}", stderr(&out));
}

#[test]
fn invalid_config_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    for (text, field) in [
        (r#"{"numeric": {"N": 0}}"#, "numeric.N"),
        (r#"{"numeric": {"tol": 0}}"#, "numeric.tol"),
        (r#"{"space": {"family": "Op", "m": 1, "n": 1, "orlicz": {"identity": {}}}}"#, "space.p"),
        (r#"{"verify": {"symmetry": {"space": {"family": "Cinf", "m": 0, "n": 1, "orlicz": {"identity": {}}}}}}"#, "verify.symmetry.space.m"),
        (r#"{"thresholds": {"divergence_factor": 2, "stability": 0.1, "extra": 1}}"#, "thresholds.extra"),
    ] {
        let cfg = write_config(&dir, text);
        let out = run(&["verify-paper", "--config", cfg.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1), "{text}");
        assert!(stderr(&out).contains(field), "{text}: {}", stderr(&out));
        assert!(out.stdout.is_empty());
    }
    let out = run(&["verify-paper", "--N", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("numeric.N"));
}

#[test]
fn membership_verdicts() {
    let verdict = |x: &str| json_body(&run(&["membership", x]))["report"]["verdict"].as_str().unwrap().to_string();
    assert_eq!(verdict("solidity_x"), "bounded");
    assert_eq!(verdict("solidity_y"), "divergent-trend");

    let cfg = config("euclidean.json");
    let body = json_body(&run(&["membership", "--config", cfg.to_str().unwrap()]));
    assert_eq!(body["report"]["verdict"], "bounded");
    assert!(body["report"]["luxemburg_values"].as_array().unwrap().iter().all(|v| v == 0.0));
}

#[test]
fn n_override_resets_schedule() {
    let body = json_body(&run(&["membership", "solidity_x", "--N", "10"]));
    assert_eq!(body["report"]["N_schedule"], serde_json::json!([10, 20, 40]));
}

#[test]
fn orlicz_check_reports() {
    let body = json_body(&run(&["orlicz-check", r#"{"power": 2}"#]));
    assert_eq!(body["axioms_hold"], true);
    assert!((body["delta2_constant"].as_f64().unwrap() - 2.0).abs() < 0.1);

    let body = json_body(&run(&["orlicz-check", r#"{"exp_minus_one": {}}"#]));
    assert_eq!(body["axioms_hold"], true);
    assert!(body["delta2_constant"].is_null());

    let body = json_body(&run(&["orlicz-check", r#"{"identity": {}}"#]));
    assert_eq!(body["scaling_inequality"], true);
    assert_eq!(body["scaling_max_gap"], 0.0);

    let out = run(&["orlicz-check", r#"{"power": 0.5}"#]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("expression"));
}

#[test]
fn numeric_failure_exits_2_with_bracket() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        &dir,
        r#"{"space": {"family": "Lp", "p": 1, "m": 1, "n": 0, "orlicz": {"exp_minus_one": {}}},
            "sequences": {"huge": {"kind": "explicit", "terms": [[[0, 1.5e308, 1.5e308], [1, 1.5e308, 1.5e308]]]}, "zero": {"kind": "zero"}}}"#,
    );
    let out = run(&["metric", "huge", "zero", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bracket"), "{}", stderr(&out));
}

#[test]
fn report_bodies_are_deterministic() {
    for args in [vec!["verify-paper"], vec!["membership", "symmetry_y"], vec!["metric", "solidity_x", "solidity_y"]] {
        let a = json_body(&run(&args));
        let b = json_body(&run(&args));
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap(), "{args:?}");
    }
    let seeded = |seed: &str| json_body(&run(&["verify-paper", "--seed", seed]));
    assert_eq!(seeded("3"), seeded("3"));
}

#[test]
fn csv_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("suite.csv");
    let out = run(&["verify-paper", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("experiment,verdict,checks_passed,checks_total"));
    assert_eq!(lines.count(), 7);

    let out = run(&["membership", "solidity_y", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("N,phi,luxemburg,verdict\n50,"), "{text}");
}

#[test]
fn usage_errors_are_config_errors() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn shipped_default_config_matches_builtin_defaults() {
    let mut shipped = fuzzy_cesaro::config::JobConfig::load(&config("default.json")).unwrap();
    shipped.metric = None;
    shipped.membership = None;
    assert_eq!(shipped, fuzzy_cesaro::config::JobConfig::default());
}
