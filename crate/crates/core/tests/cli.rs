use std::process::{Command, Output};

use order3::cli::run;
use order3::json;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_order3")).args(args).env_remove("ORDER3_TRUNC").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_reports_zero_residuals() {
    let o = bin(&["validate", "--alg", "so23_order3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("J1-J4: all residuals zero"));
}

#[test]
fn invalid_algebra_is_a_domain_error() {
    let o = bin(&["validate", "--alg", "F11", "--params", "1,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(Y1, Y1, Y1)"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bin(&["validate"]).status.code(), Some(2));
    assert_eq!(bin(&["solve", "--g0", "sl2", "--rep", "D2", "--bogus"]).status.code(), Some(2));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}

#[test]
fn solve_adjoint() {
    let o = bin(&["--json", "solve", "--g0", "sl2", "--rep", "D2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "ok");
    assert_eq!(v["report"]["nullity"], 1);
    let alg = json::AlgebraJson::to_algebra(&serde_json::from_value(v["report"]["basis"][0].clone()).unwrap()).unwrap();
    assert!(alg.is_valid());
}

#[test]
fn contraction_names_its_limit() {
    let o = bin(&["contract", "--alg", "so23_order3", "--exps", "0,0,0,0,0,0,1,1,1,1;1/3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("limit equals catalog algebra lege_mica"));
    let o = bin(&["contract", "--alg", "g31", "--exps", "0;-1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("E entry (1,1,1,1)"));
}

#[test]
fn curve_file_contraction() {
    let dir = tempfile::tempdir().unwrap();
    let curve = dir.path().join("curve.json");
    std::fs::write(&curve, r#"{"h0": [[{"0": "1"}]], "h1": [[{"1": "1"}]]}"#).unwrap();
    let o = bin(&["contract", "--alg", "g31", "--curve", curve.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("limit equals catalog algebra g33"));
}

#[test]
fn export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("a.json");
    let o = bin(&["catalog", "export", "sl2adj", "--params", "1/3+2/5*i", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let a = json::parse_algebra(&p).unwrap();
    assert_eq!(a, order3::catalog::build("sl2adj", &["1/3+2/5*i".parse().unwrap()]).unwrap());
    let o = bin(&["validate", "--alg", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn malformed_file_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, r#"{"label":"x","dims":{"m":1,"n":1},"c":[],"d":[],"e":[{"a":1,"b":1,"c":1,"i":3,"v":"1"}]}"#).unwrap();
    let o = bin(&["validate", "--alg", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.json") || err.contains("(1,1,1,3)"), "{}", err);
}

#[test]
fn truncation_env_var() {
    let o = Command::new(env!("CARGO_BIN_EXE_order3"))
        .args(["--json", "deform", "poincare"])
        .env("ORDER3_TRUNC", "2")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["order"], 2);
    assert_eq!(v["report"]["residuals"].as_array().unwrap().len(), 5);
    let o = Command::new(env!("CARGO_BIN_EXE_order3"))
        .args(["deform", "poincare"])
        .env("ORDER3_TRUNC", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn series_check_detects_broken_series() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("s.json");
    assert_eq!(bin(&["deform", "poincare", "--out", p.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(bin(&["deform", "check", "--series", p.to_str().unwrap()]).status.code(), Some(0));
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    v["terms"].as_array_mut().unwrap().pop();
    std::fs::write(&p, v.to_string()).unwrap();
    let o = bin(&["deform", "check", "--series", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("circle"));
}

#[test]
fn representation_verbs() {
    let o = bin(&["character", "--rep", "D2+D1+D0"]);
    assert!(stdout(&o).contains("decomposition D2 + D1 + D0"));
    let o = bin(&["plethysm", "--rep", "D1"]);
    assert!(stdout(&o).contains("mixed: dim 2 = D1"));
    let o = bin(&["filtration", "--ext", "spinor_pair"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(bin(&["filtration", "--ext", "nope"]).status.code(), Some(1));
}

#[test]
fn in_process_matches_binary() {
    let args = ["order3", "cocycles", "--alg", "g31"];
    let r = run(args);
    let o = bin(&args[1..]);
    assert_eq!(r.code, o.status.code().unwrap());
    assert_eq!(r.stdout, stdout(&o));
    assert!(r.stdout.contains("coboundaries: 1"));
}
