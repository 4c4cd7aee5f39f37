use std::path::PathBuf;
use std::process::{Command, Output};

fn rdefect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rdefect"))
        .args(args)
        .env_remove("RDEFECT_TRUNC_DEGREE")
        .output()
        .unwrap()
}

fn corpus(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/corpus").join(name);
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn run_prints_values() {
    let o = rdefect(&["run", &corpus("eps2_examples.lrh")]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("eps2 A = 2"), "{}", stdout(&o));
}

#[test]
fn false_check_exits_with_one() {
    let o = rdefect(&["run", &corpus("square_map.lrh")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("rd f = 1"));
}

#[test]
fn input_error_exits_with_two() {
    let o = rdefect(&["run", &corpus("err_undeclared.lrh")]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("err_undeclared.lrh:3:"), "{err}");
    assert_eq!(rdefect(&["run", "/nonexistent/file.lrh"]).status.code(), Some(2));
}

#[test]
fn json_report_schema() {
    let o = rdefect(&["run", "--json", &corpus("square_map.lrh")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["version"], "1");
    assert_eq!(v["options"]["trunc_degree"], 6);
    let entries = v["entries"].as_array().unwrap();
    let rd = entries.iter().find(|e| e["query"] == "rd").unwrap();
    assert_eq!(rd["value"], 1);
    assert!(rd["caveats"][0].as_str().unwrap().starts_with("verified_degree="));
    let failure = &v["failures"][0];
    assert_eq!(failure["query"], "basically_regular");
    assert!(failure["line"].as_u64().unwrap() >= 1);
}

#[test]
fn trunc_flag_and_env() {
    let o = rdefect(&["run", "--json", "--trunc", "8", &corpus("node.lrh")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["options"]["trunc_degree"], 8);
    let o = Command::new(env!("CARGO_BIN_EXE_rdefect"))
        .args(["run", "--json", &corpus("node.lrh")])
        .env("RDEFECT_TRUNC_DEGREE", "7")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["options"]["trunc_degree"], 7);
    let o = rdefect(&["run", "--trunc", "1", &corpus("node.lrh")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("node.lrh: "));
}

#[test]
fn explain_known_and_unknown() {
    let o = rdefect(&["explain", "Lem_br_lem1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("claim:"));
    assert_eq!(rdefect(&["explain", "no_such_statement"]).status.code(), Some(2));
}

#[test]
fn verify_small_campaign() {
    let o = rdefect(&["verify", "--trials", "5", "--seed", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failed"], 0);
    assert_eq!(v["trials"], 5);
    let again = rdefect(&["verify", "--trials", "5", "--seed", "1", "--json"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn verify_single_statement_over_rationals() {
    let o = rdefect(&[
        "verify", "--trials", "3", "--field", "QQ", "--statement", "Thm_rs_thm1", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["statements"].as_array().unwrap().len(), 1);
    assert_eq!(rdefect(&["verify", "--field", "GF(4)"]).status.code(), Some(2));
}
