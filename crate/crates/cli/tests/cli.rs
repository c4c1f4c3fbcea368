use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pathatlas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathatlas")).args(args).output().expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

fn example(dir: &Path, name: &str) -> String {
    let path = dir.join(format!("{name}.json"));
    let p = path.to_str().unwrap().to_string();
    let out = pathatlas(&["example", name, "--out", &p]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    p
}

fn strip_runtime(text: &str) -> String {
    text.lines()
        .map(|l| {
            let mut v: Value = serde_json::from_str(l).unwrap();
            v.as_object_mut().unwrap().remove("runtime_ms");
            v.to_string()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn validate_concat_runs_the_requested_count() {
    let out = pathatlas(&["validate", "--suite", "concat-isometry", "--seed", "7", "--count", "1000"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let checks = lines(&out);
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["status"], "pass");
    assert_eq!(checks[0]["cases"], 1000);
}

#[test]
fn validate_all_passes_every_suite() {
    let out = pathatlas(&["validate", "--suite", "all", "--count", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let checks = lines(&out);
    assert!(checks.len() >= 14);
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn usage_errors_exit_two() {
    let out = pathatlas(&["validate", "--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "usage");
    assert_eq!(pathatlas(&["validate"]).status.code(), Some(2));
    assert_eq!(pathatlas(&["margin", "--scenario", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn malformed_scenario_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, r#"{"operation":"margin","manifold":{"name":"euclidean"},"system":{"tau":[0.0,0.5],"charts":[0]}}"#).unwrap();
    assert_eq!(pathatlas(&["margin", "--scenario", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn transition_between_identical_systems_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let p = example(dir.path(), "identity-transition");
    let out = pathatlas(&["transition", "--scenario", &p]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out)[0]["measured"], 0.0);
}

#[test]
fn sphere_transition_round_trips_within_bound() {
    let dir = tempfile::tempdir().unwrap();
    let p = example(dir.path(), "sphere-transition");
    let out_file = dir.path().join("out.jsonl");
    let out = pathatlas(&["transition", "--scenario", &p, "--out", out_file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&out_file).unwrap();
    let check: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    let err = check["measured"].as_f64().unwrap();
    assert!(err < 1e-6, "{err}");
    assert_eq!(check["data"]["refinement"], serde_json::json!([0.0, 0.5, 1.0]));
}

#[test]
fn cover_violation_exits_three_with_time() {
    let dir = tempfile::tempdir().unwrap();
    let p = example(dir.path(), "cover-violation");
    let out = pathatlas(&["reconstruct", "--scenario", &p]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "domain");
    assert_eq!(err["time"], 0.5);
}

#[test]
fn moebius_holonomy_is_minus_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = example(dir.path(), "moebius-transport");
    let out = pathatlas(&["transport", "--scenario", &p]);
    assert_eq!(out.status.code(), Some(0));
    let checks = lines(&out);
    let transport = checks.iter().find(|c| c["name"] == "transport").unwrap();
    assert_eq!(transport["data"]["holonomy"], serde_json::json!([[-1.0]]));
    assert!(checks.iter().all(|c| c["status"] == "pass"));
}

#[test]
fn euclidean_margin_is_positive() {
    let dir = tempfile::tempdir().unwrap();
    let p = example(dir.path(), "euclidean-margin");
    let out = pathatlas(&["margin", "--scenario", &p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(lines(&out)[0]["data"]["eta"].as_f64().unwrap() > 0.0);
}

#[test]
fn zero_rep_reconstructs_a_constant_path() {
    let dir = tempfile::tempdir().unwrap();
    let p = example(dir.path(), "zero-reconstruct");
    let out = pathatlas(&["reconstruct", "--scenario", &p]);
    assert_eq!(out.status.code(), Some(0));
    let piece = &lines(&out)[0]["data"]["path"]["pieces"][0];
    assert_eq!(piece["jet"], serde_json::json!([[1.0, -2.0]]));
    assert_eq!(piece["top"]["values"], serde_json::json!([[0.0, 0.0]]));
}

#[test]
fn validate_output_is_deterministic() {
    let run = |workers: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_pathatlas"))
            .args(["validate", "--suite", "all", "--seed", "3", "--count", "2"])
            .env("PATHATLAS_WORKERS", workers)
            .output()
            .unwrap();
        assert!(out.status.success());
        strip_runtime(&String::from_utf8(out.stdout).unwrap())
    };
    let a = run("1");
    assert_eq!(a, run("4"));
    assert_eq!(a, run("1"));
}

#[test]
fn examples_are_listed() {
    let out = pathatlas(&["example"]);
    assert!(String::from_utf8_lossy(&out.stdout).lines().any(|l| l == "moebius-transport"));
    assert_eq!(pathatlas(&["example", "nope"]).status.code(), Some(2));
}
