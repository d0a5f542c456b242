use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn eunorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eunorm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim().to_string()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

const STANDARD_TRIPLE: &str = r#"{"n": 2, "points": [[1, 0], [0, 1], [1, 1]]}"#;
const FOUR_FLAGS: &str = r#"{"n": 2, "flags": [
    [[1, 0], [0, 1]], [["1/2", 2], [0, 1]], [[3, 1], [1, -1]], [[-1, 2], [1, 1]]
]}"#;

#[test]
fn eval_prints_bare_rationals() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.json", STANDARD_TRIPLE);
    let p = p.to_str().unwrap();
    let pcoc = eunorm(&["eval", "pcoc", p]);
    assert!(pcoc.status.success());
    assert_eq!(stdout(&pcoc), "-1");
    assert_eq!(stdout(&eunorm(&["eval", "smi", p])), "1/4");
}

#[test]
fn coboundaries_of_flag_cocycles_vanish() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", FOUR_FLAGS);
    let f = f.to_str().unwrap();
    assert_eq!(stdout(&eunorm(&["eval", "dcoco", f])), "0");
    assert_eq!(stdout(&eunorm(&["eval", "dcoc", f])), "0");
    assert_eq!(stdout(&eunorm(&["eval", "dcoc", f, "--mode", "naive"])), "0");
}

#[test]
fn naive_budget_is_enforced() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", FOUR_FLAGS);
    let out = eunorm(&["eval", "dcoc", f.to_str().unwrap(), "--mode", "naive", "--budget", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn witnesses() {
    let json = |n: &str| -> Value {
        let out = eunorm(&["witness", "obstruction", "--n", n]);
        assert!(out.status.success());
        serde_json::from_slice(&out.stdout).unwrap()
    };
    assert_eq!(json("2")["value"], "0");
    assert_eq!(json("4")["value"], "-1");

    let out = eunorm(&["witness", "coboundary-kill", "--n", "4"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["matrices"].as_array().unwrap().len(), 5);
    assert!(v["determinants"].as_array().unwrap().iter().all(|d| d == "-1"));
}

#[test]
fn odd_dimension_is_an_input_error() {
    assert_eq!(eunorm(&["witness", "obstruction", "--n", "3"]).status.code(), Some(1));
    assert_eq!(eunorm(&["itu", "--n", "3", "--samples", "10"]).status.code(), Some(1));
    assert_eq!(
        eunorm(&["verify", "--suite", "alternating", "--n", "3"]).status.code(),
        Some(1)
    );
}

#[test]
fn malformed_files_are_input_errors() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"n": 2, "points": [[1, 0]"#);
    assert_eq!(eunorm(&["eval", "pcoc", bad.to_str().unwrap()]).status.code(), Some(1));
    let short = write(&dir, "short.json", r#"{"n": 2, "points": [[1, 0], [0, 1]]}"#);
    assert_eq!(eunorm(&["eval", "pcoc", short.to_str().unwrap()]).status.code(), Some(1));
    let missing = dir.path().join("missing.json");
    assert_eq!(eunorm(&["eval", "smi", missing.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn verify_reports_are_reproducible() {
    let run = || {
        let out = eunorm(&["verify", "--suite", "cocycle-coco", "--seed", "1", "--trials", "40"]);
        assert_eq!(out.status.code(), Some(0));
        let mut v: Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().remove("wall_time_ms");
        v
    };
    let a = run();
    assert_eq!(a["failures"].as_array().unwrap().len(), 0);
    assert_eq!(a, run());
    assert_eq!(eunorm(&["verify", "--suite", "nonsense"]).status.code(), Some(1));
}

#[test]
fn bundle_pipeline() {
    let dir = TempDir::new().unwrap();
    for (holonomy, expected) in [("fuchsian", "1"), ("trivial", "0")] {
        let out = eunorm(&["fixture", "--genus", "2", "--holonomy", holonomy]);
        assert!(out.status.success());
        let file = write(&dir, &format!("{holonomy}.json"), &String::from_utf8(out.stdout).unwrap());
        for mode in ["smillie", "sullivan"] {
            let out = eunorm(&["euler", file.to_str().unwrap(), "--mode", mode]);
            assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
            let v: Value = serde_json::from_slice(&out.stdout).unwrap();
            assert_eq!(v["euler_number"], expected);
            assert_eq!(v["closed"], true);
        }
    }
}

#[test]
fn open_chains_need_opting_in() {
    let dir = TempDir::new().unwrap();
    let open = write(
        &dir,
        "open.json",
        r#"{"n": 2, "vertices": 3,
            "simplices": [{"v": [0, 1, 2], "c": 1}],
            "transitions": [
                {"i": 0, "j": 1, "g": [[1, 0], [0, 1]]},
                {"i": 0, "j": 2, "g": [[1, 0], [0, 1]]},
                {"i": 1, "j": 2, "g": [[1, 0], [0, 1]]}],
            "section": [[1, 0], [0, 1], [-1, -1]]}"#,
    );
    let p = open.to_str().unwrap();
    assert_eq!(eunorm(&["euler", p]).status.code(), Some(1));
    let out = eunorm(&["euler", p, "--allow-open"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["closed"], false);
    assert!(v["euler_number"].is_null());
}

#[test]
fn itu_on_identity_tuple() {
    let out = eunorm(&["itu", "--n", "2", "--samples", "20000", "--seed", "4"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let (mean, se) = (v["mean"].as_f64().unwrap(), v["stderr"].as_f64().unwrap());
    assert!(mean.abs() <= 4.0 * se + 1e-12);

    let dir = TempDir::new().unwrap();
    let gs = write(&dir, "gs.json", r#"{"n": 2, "gs": [[[1, 0], [0, 1]], [[2, 1], [1, 1]], [[0, -1], [1, 0]]]}"#);
    let args = ["itu", "--n", "2", "--samples", "5000", "--seed", "1", "--gs", gs.to_str().unwrap()];
    let a = eunorm(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, eunorm(&args).stdout);
    let seq = eunorm(&[&args[..], &["--sequential"]].concat());
    assert_eq!(a.stdout, seq.stdout);
}

#[test]
fn realize_emits_points() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.json", FOUR_FLAGS);
    let out = eunorm(&["realize", f.to_str().unwrap()]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 4);
}
