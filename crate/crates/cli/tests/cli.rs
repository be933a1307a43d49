use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn toursid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toursid")).args(args).env_remove("TOURSID_CACHE_DIR").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = toursid(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("toursid-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn classify_path_example() {
    let v = json(&["classify-path", ">>>>><><>", "--json"]);
    assert_eq!(v["verdict"], "Neither");
    assert_eq!(v["counts"]["c_p3"], 0);
}

#[test]
fn verify_finds_nothing_on_small_hosts() {
    let v = json(&["verify", "--mode", "tas", "--pattern", ">><<", "--max-n", "5", "--json"]);
    assert!(v["violation"].is_null());
    assert_eq!(v["n_checked"], 5);
}

#[test]
fn exact_values_are_rational_strings() {
    let v = json(&["kernels", "--name", "B1", "--json"]);
    assert_eq!(v["kernels"][0]["t_p3"], "-1/4");
    let c = json(&["certificate", "--json"]);
    assert_eq!(c["value"], "2307/64");
    let host = scratch("cyclic.txt", "tournament n=3\n0 1 0\n0 0 1\n1 0 0\n");
    let h = json(&["hom", "--pattern", ">>", "--file", host.to_str().unwrap(), "--json"]);
    assert_eq!(h["raw"], "27/4");
    assert_eq!(h["density"], "1/4");
}

#[test]
fn expansion_shows_both_forms() {
    let v = json(&["expand", "><", "--json"]);
    assert_eq!(v["x_form"], "(1/4)*n^3 + (1)*n^0*X2^1");
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = ["lyapunov", "--mode", "recurrence", "--beta", "1/8", "--steps", "200000", "--seed", "7", "--json"];
    let a = toursid(&args);
    let b = toursid(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v["lambda_hat"].as_f64().unwrap() < 0.0);
}

#[test]
fn csv_trajectory() {
    let out = toursid(&["fg", "><>", "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "step,f,g");
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[1], "0,1,1");
    assert_eq!(rows[2], "1,3/2,1/2");
}

#[test]
fn exit_codes_and_error_names() {
    let bad = toursid(&["classify-path", "x>"]);
    assert_eq!(bad.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&bad.stderr).unwrap();
    assert_eq!(err["error"], "InvalidCharacter");
    assert!(err["message"].is_string());

    let no_seed = toursid(&["lyapunov", "--mode", "fg", "--steps", "20000"]);
    assert_eq!(no_seed.status.code(), Some(2));

    let unknown = toursid(&["no-such-command"]);
    assert_eq!(unknown.status.code(), Some(2));

    let no_csv = toursid(&["counts", ">>", "--csv"]);
    assert_eq!(no_csv.status.code(), Some(2));
}

#[test]
fn tree_commands_read_files() {
    let t = scratch("tree.txt", "tree v=5\n0 1\n1 2\n2 3\n1 4\n");
    let p = t.to_str().unwrap();
    let o = json(&["orient-tree", "--file", p, "--json"]);
    assert_eq!(o["arcs"].as_array().unwrap().len(), 4);
    let pair = json(&["iso-pair", "--file", p, "--json"]);
    assert!(!pair["pair"].is_null());
}

#[test]
fn verify_cache_round_trip() {
    let dir = std::env::temp_dir().join(format!("toursid-cache-{}", std::process::id()));
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_toursid"))
            .args(["verify", "--mode", "ts", "--pattern", "><", "--max-n", "4", "--json"])
            .env("TOURSID_CACHE_DIR", &dir)
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 1);
    assert_eq!(run().stdout, first.stdout);
    let _ = std::fs::remove_dir_all(&dir);
}
