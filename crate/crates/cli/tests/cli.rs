use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpm-ekeland")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}\nstderr: {}", String::from_utf8_lossy(&o.stdout), String::from_utf8_lossy(&o.stderr))
    })
}

fn three_point(extra: &[&str]) -> Vec<String> {
    let mut v = vec![
        "--space".to_string(),
        fixture("three_point.space.json"),
        "--objective".to_string(),
        fixture("three_point.objective.json"),
    ];
    v.extend(extra.iter().map(|s| s.to_string()));
    v
}

fn run_owned(cmd: &str, args: Vec<String>) -> Output {
    let mut all = vec![cmd.to_string()];
    all.extend(args);
    run(&all.iter().map(String::as_str).collect::<Vec<_>>())
}

#[test]
fn validate_accepts_valid_space() {
    let o = run(&["validate", "--space", &fixture("three_point.space.json")]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["axioms"]["qm2_ok"], true);
    assert_eq!(r["separation"], "t1");
}

#[test]
fn validate_reports_triangle_witness() {
    let o = run(&["validate", "--space", &fixture("triangle_violation.space.json")]);
    assert_eq!(code(&o), 1);
    assert_eq!(json(&o)["axioms"]["qm2_witness"], serde_json::json!(["a", "b", "c"]));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(code(&run(&["validate", "--space", "/nonexistent/space.json"])), 2);
    let o = run(&["validate", "--space", &fixture("malformed.space.json")]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    assert_eq!(code(&run(&["validate"])), 2);
    assert_eq!(code(&run_owned("ekeland", three_point(&["--eps", "1"]))), 2);
    assert_eq!(code(&run_owned("ekeland", three_point(&["--eps", "-1", "--lambda", "1"]))), 2);
    assert_eq!(code(&run_owned("ekeland", three_point(&["--eps", "1", "--lambda", "1", "--x0", "q"]))), 2);
    assert_eq!(code(&run(&["ekeland", "--gen", "n=0", "--eps", "1", "--lambda", "1"])), 2);
}

#[test]
fn validate_classifies_sequences() {
    let o = run(&[
        "validate",
        "--space",
        &fixture("upper_ray.space.json"),
        "--sequence",
        &fixture("reciprocal.sequence.json"),
        "--sample",
        "4",
    ]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["axioms"]["sampled"], true);
    assert_eq!(r["sequence"]["limits"]["dbar_limits"], serde_json::json!(["0"]));
    assert_eq!(r["sequence"]["cauchy"]["right"], "yes");

    let o = run(&["validate", "--space", &fixture("three_point.space.json"), "--sequence", &fixture("settling.sequence.json")]);
    assert_eq!(json(&o)["sequence"]["limits"]["ds_limits"], serde_json::json!(["c"]));
}

#[test]
fn ekeland_three_point_fixture() {
    let o = run_owned("ekeland", three_point(&["--eps", "1", "--lambda", "1", "--x0", "a", "--oracle"]));
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["kind"], "ekeland_certificate");
    assert_eq!(r["certificate"]["z_id"], "c");
    assert_eq!(r["cross_check"]["z_admissible"], true);
    assert_eq!(r["cross_check"]["flags_agree"], true);
}

#[test]
fn ekeland_constant_objective_keeps_start() {
    let o = run(&[
        "ekeland",
        "--space",
        &fixture("three_point.space.json"),
        "--objective",
        &fixture("constant.objective.json"),
        "--eps",
        "1",
        "--lambda",
        "1",
        "--x0",
        "b",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["certificate"]["z_id"], "b");
}

#[test]
fn ekeland_primed_form_cross_checks() {
    let o = run_owned("ekeland", three_point(&["--lambda-prime", "3", "--eps", "1", "--oracle"]));
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["cross_check"]["flags_agree"], true);
}

#[test]
fn ekeland_generated_with_oracle() {
    for seed in 0..5 {
        let o = run(&["ekeland", "--gen", &format!("n=20,seed={seed}"), "--eps", "0.5", "--lambda", "2", "--oracle"]);
        assert_eq!(code(&o), 0);
        assert_eq!(json(&o)["cross_check"]["z_admissible"], true);
    }
}

#[test]
fn strong_flavors_on_fixture() {
    let o = run_owned("strong", three_point(&["--flavor", "georgiev", "--gamma", "1", "--delta", "0.5", "--x0", "a", "--oracle"]));
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["certificate"]["cond_4"]["status"], "pass");
    assert!(r["certificate"]["georgiev"]["lambda_prime"].as_f64().unwrap() < 1.0);

    let o = run_owned("strong", three_point(&["--flavor", "suzuki", "--lambda", "1", "--x0", "a", "--oracle"]));
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["cross_check"]["flags_agree"], true);

    assert_eq!(code(&run_owned("strong", three_point(&["--flavor", "suzuki", "--gamma", "1"]))), 2);
}

fn csv_rows(dir: &Path, name: &str) -> Vec<String> {
    std::fs::read_to_string(dir.join(name)).unwrap().lines().map(String::from).collect()
}

#[test]
fn strong_probe_on_ray_truncation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = run(&[
        "strong",
        "--space",
        &fixture("ray.space.json"),
        "--objective",
        &fixture("ray.objective.json"),
        "--truncate",
        "50",
        "--flavor",
        "suzuki",
        "--lambda",
        "0.5",
        "--x0",
        "0",
        "--probe",
        "4",
        "--probe-gamma",
        "0",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["certificate"]["z_id"], "0");
    let traces = r["traces"].as_array().unwrap();
    assert_eq!(traces.len(), 4);
    assert!(traces.iter().any(|t| t["verdict"]["verdict"] == "diverges"));
    let rows = csv_rows(dir.path(), "trace-000.csv");
    assert_eq!(rows[0], "n,g_value,dist");
    assert_eq!(rows.len(), 61);
}

#[test]
fn probe_on_ray_diverges() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "probe",
        "--space",
        &fixture("ray.space.json"),
        "--objective",
        &fixture("ray.objective.json"),
        "--trials",
        "2",
        "--trace-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["traces"][0]["verdict"]["verdict"], "diverges");
    assert_eq!(r["traces"][0]["dists"][50], 50.0);
    assert!(r["traces"][0]["g_values"][50].as_f64().unwrap() < 1e-18);
    assert!(dir.path().join("trace-001.csv").exists());
}

#[test]
fn falsify_exit_codes() {
    let o = run(&["falsify", "--budget", "150"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["counterexample"].is_null());

    let o = run(&["falsify", "--budget", "1000", "--mutate", "skip-condition-ii"]);
    assert_eq!(code(&o), 1);
    let r = json(&o);
    assert!(r["counterexample"]["z"].is_number());
    assert!(r["counterexample"]["checker_flags"].is_array());

    let o = run(&["falsify", "--family", "probe", "--budget", "20"]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["probe"]["rays"].is_array());
}

#[test]
fn reports_are_byte_identical() {
    let a = run(&["falsify", "--budget", "120", "--seed", "9", "--jobs", "3"]);
    let b = run(&["falsify", "--budget", "120", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["strong", "--gen", "n=15,seed=4,family=directed_cycle", "--gamma", "0.75", "--delta", "1", "--oracle"]);
    let b = run(&["strong", "--gen", "n=15,seed=4,family=directed_cycle", "--gamma", "0.75", "--delta", "1", "--oracle"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn gen_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let space = dir.path().join("s.json");
    let objective = dir.path().join("f.json");
    let o = run(&[
        "gen",
        "--gen",
        "n=9,seed=5,family=asymmetric_graph",
        "--space-out",
        space.to_str().unwrap(),
        "--objective-out",
        objective.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let from_files = run(&[
        "ekeland",
        "--space",
        space.to_str().unwrap(),
        "--objective",
        objective.to_str().unwrap(),
        "--eps",
        "1",
        "--lambda",
        "0.5",
    ]);
    let generated = run(&["ekeland", "--gen", "n=9,seed=5,family=asymmetric_graph", "--eps", "1", "--lambda", "0.5"]);
    assert_eq!(code(&from_files), 0);
    assert_eq!(from_files.stdout, generated.stdout);
}
