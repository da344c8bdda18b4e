use std::io::Write;
use std::process::{Command, Output};

fn poinf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poinf")).args(args).env_remove("MCM_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn canon_of_the_swap() {
    let o = poinf(&["canon", "W"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), r#"{"a":[],"b":[],"g":1}"#);
}

#[test]
fn boolean_queries_use_exit_codes() {
    let o = poinf(&["eq", "W*W", "I"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "true");

    let o = poinf(&["sigma-eq", "G1", "U1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "false");

    assert_eq!(poinf(&["leq", "E{(2,1)} * G1", "G1"]).status.code(), Some(0));
    assert_eq!(poinf(&["leq", "G1", "E{(2,1)} * G1"]).status.code(), Some(1));
    assert_eq!(poinf(&["sigma-eq", "G2", "E{(5,5)} * G2"]).status.code(), Some(0));
}

#[test]
fn errors_exit_with_two() {
    let o = poinf(&["eq", "G0", "I"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("1:2"), "{err}");
    assert_eq!(poinf(&["eval", "G1", "--apply", "0,1"]).status.code(), Some(2));
}

#[test]
fn eval_and_apply() {
    assert_eq!(stdout(&poinf(&["eval", "G1^2", "--apply", "3,1"])).trim(), "[1,1]");
    assert_eq!(stdout(&poinf(&["eval", "G1", "--apply", "1,1"])).trim(), "null");
    let json = stdout(&poinf(&["normalize", "W*W"]));
    assert_eq!(json.trim(), r#"{"window":1,"explicit":[[1,1,1,1]],"row_shifts":[0],"col_shifts":[0],"orientation":0}"#);
}

#[test]
fn file_literals_are_loaded() {
    let json = stdout(&poinf(&["normalize", "G1 * U2"]));
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    let path = f.path().to_str().unwrap();
    assert_eq!(poinf(&["eq", &format!("@{path}"), "G1 * U2"]).status.code(), Some(0));
}

#[test]
fn solve_prints_json_lines() {
    let o = poinf(&["solve", "--side", "right", "G1", "G1*G2"]);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 1);
    let back = poinf(&["eq", &format!("@{}", lines[0]), "G2"]);
    assert_eq!(back.status.code(), Some(0));

    // the identity hole at (1,1) can be filled either way on each side
    for side in ["right", "left"] {
        let o = poinf(&["solve", "--side", side, "E{(1,1)}", "E{(1,1)}"]);
        assert_eq!(stdout(&o).lines().count(), 2, "{side}");
    }
    assert!(stdout(&poinf(&["solve", "--side", "left", "G1", "U1"])).is_empty());
    assert_eq!(poinf(&["solve", "--side", "right", "G1", "G1", "--margin", "1"]).status.code(), Some(2));
}

#[test]
fn random_is_seed_deterministic() {
    let a = stdout(&poinf(&["random", "--seed", "11"]));
    assert_eq!(a, stdout(&poinf(&["random", "--seed", "11"])));
    let env = Command::new(env!("CARGO_BIN_EXE_poinf")).args(["random"]).env("MCM_SEED", "11").output().unwrap();
    assert_eq!(a, stdout(&env));
    assert_ne!(a, stdout(&poinf(&["random", "--seed", "12"])));
}

#[test]
fn verify_runs_a_single_suite() {
    let o = poinf(&["verify", "--suite", "a2", "--samples", "25", "--seed", "3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("A2") && out.contains("PASS"), "{out}");
    assert_eq!(poinf(&["verify", "--suite", "nope"]).status.code(), Some(2));
}
