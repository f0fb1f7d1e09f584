use std::process::{Command, Output};

use serde_json::Value;

fn topogame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topogame")).args(args).env_remove("TOPOGAME_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let o = topogame(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("topogame-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn show_discrete() {
    let v = json(&["space", "show", "discrete:2", "--json"]);
    assert_eq!(v["points"], 2);
    assert_eq!(v["base_list"].as_array().unwrap().len(), 2);
}

#[test]
fn show_pixley_roy_points_as_sets() {
    let v = json(&["space", "show", "pr:discrete:2", "--json"]);
    assert_eq!(v["points"], 4);
    let sets: Vec<&Value> = v["point_list"].as_array().unwrap().iter().map(|p| &p["set"]).collect();
    assert!(sets.iter().any(|s| s.as_array().is_some_and(|a| a.is_empty())));
}

#[test]
fn validate_rejects_a_non_preorder() {
    let bad = tmp("bad.json");
    std::fs::write(&bad, r#"{"points": 2, "order": [[0, 5]]}"#).unwrap();
    let o = topogame(&["space", "validate", bad.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(topogame(&["space", "validate", "chain:3"]).status.success());
}

#[test]
fn play_is_deterministic_per_seed() {
    let args = ["play", "--game", "open-picking", "--space", "rationals", "--innings", "6", "--json"];
    let a = json(&args);
    let b = json(&args);
    assert_eq!(a, b);
    let mut seeded = args.to_vec();
    seeded.extend(["--seed", "9"]);
    assert_eq!(json(&seeded), json(&seeded));
}

#[test]
fn transcripts_replay() {
    let out = tmp("t.json");
    let o = topogame(&[
        "play", "--game", "point-open", "--space", "discrete:2", "--strategy-I", "solver",
        "--innings", "3", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let replayed = topogame(&["play", "--replay", out.to_str().unwrap()]);
    assert!(replayed.status.success());
    assert_eq!(stdout(&o), stdout(&replayed));
}

#[test]
fn solver_table_plays_back() {
    let table = tmp("s.json");
    let o = topogame(&["solve", "--space", "sierpinski", "--game", "open-picking", "--emit-strategy", table.to_str().unwrap()]);
    assert!(stdout(&o).contains("player I wins"));
    let v = json(&[
        "play", "--game", "open-picking", "--space", "sierpinski", "--strategy-I", table.to_str().unwrap(), "--json",
    ]);
    assert!(v["verdict"].to_string().contains("WinI"), "{v}");
}

#[test]
fn verify_lists_and_runs() {
    let o = topogame(&["verify"]);
    assert!(stdout(&o).contains("omega-embedding"));
    let o = topogame(&["verify", "omega-embedding"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
    assert!(!topogame(&["verify", "no-such-suite"]).status.success());
}

#[test]
fn transform_checks_on_finite_spaces() {
    let o = topogame(&["transform", "--op", "dual-forward", "--strategy", "solver", "--space", "discrete:2"]);
    assert!(o.status.success());
    let recipe: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(recipe["op"], "dual-forward");
}
