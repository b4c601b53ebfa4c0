use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bridgevar")).args(args).env_remove("BRIDGEVAR_SEED").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_figure_eight() {
    let v = json(&["analyze", "-k", "2", "-l", "-2", "--json"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["genus"]["x"][0]["value"], 1);
    assert_eq!(v["genus"]["x"][0]["route"], "both-agree");
    assert_eq!(v["fibered"]["value"], true);
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn analyze_degenerate_inputs() {
    let v = json(&["analyze", "-k", "1", "-l", "6", "--json"]);
    assert_eq!(v["classification"], "TorusNonHyperbolic");
    assert_eq!(v["models"]["d_state"], "LineUnion");
    assert!(v["components"]["value"]["Degenerate"].is_string());
    let v = json(&["analyze", "-k", "3", "-l", "3", "--json"]);
    assert_eq!(v["classification"], "NotAKnot");
}

#[test]
fn json_is_deterministic() {
    let a = run(&["analyze", "-k", "-3", "-l", "4", "--json"]).stdout;
    let b = run(&["analyze", "-k", "-3", "-l", "4", "--json"]).stdout;
    assert_eq!(a, b);
    let a = run(&["verify", "riley", "--kmax", "3", "--nmax", "1", "--seed", "9", "--json"]).stdout;
    let b = run(&["verify", "riley", "--kmax", "3", "--nmax", "1", "--seed", "9", "--json"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn seed_env_overrides_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_bridgevar"))
        .args(["verify", "riley", "--kmax", "2", "--nmax", "1", "--seed", "3", "--json"])
        .env("BRIDGEVAR_SEED", "17")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 17);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "-k", "x", "-l", "2"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--kmax", "1", "--lmax", "4"]).status.code(), Some(2));
    assert_eq!(run(&["tracefield", "-k", "1", "-l", "4"]).status.code(), Some(2));
    assert_eq!(run(&["newton", "--poly", "x^2-4", "-p", "4"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "identities", "--range", "5"]).status.code(), Some(0));
}

#[test]
fn sweep_small_grid() {
    let out = run(&["sweep", "--kmax", "2", "--lmax", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows.iter().filter(|r| r.contains("Hyperbolic")).count(), 2);
    assert_eq!(rows.iter().filter(|r| r.contains("Trefoil")).count(), 2);

    let out = run(&["sweep", "--kmax", "4", "--lmax", "4", "--format", "jsonl", "--jobs", "2"]);
    assert!(out.status.success());
    let rows: Vec<Value> =
        String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let r44 = rows.iter().find(|r| r["k"] == 4 && r["l"] == 4).unwrap();
    assert_eq!(r44["components"], 2);
    assert!(rows.iter().all(|r| r["status"] == "ok"));
}

#[test]
fn verify_newton_text() {
    let out = run(&["verify", "newton"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("PASS [newton] binomial valuations, p=3, n=81")));
    assert!(text.ends_with("0 failed\n"));
}
