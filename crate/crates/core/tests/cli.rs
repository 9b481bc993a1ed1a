use std::path::PathBuf;
use std::process::{Command, Output};

fn qsphere(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsphere"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn chern_json_matches_golden() {
    for (n, file) in [("1", "ch1.json"), ("2", "ch2.json")] {
        let out = qsphere(&["chern", "--n", n, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out), golden(file), "ch{n}");
    }
}

#[test]
fn chern_is_independent_of_worker_count() {
    let one = qsphere(&["chern", "--n", "2", "--workers", "1"]);
    let eight = qsphere(&["chern", "--n", "2", "--workers", "8"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, eight.stdout);
    let one = qsphere(&["chern", "--n", "2", "--workers", "1", "--format", "json"]);
    let eight = qsphere(&["chern", "--n", "2", "--workers", "8", "--format", "json"]);
    assert_eq!(one.stdout, eight.stdout);
}

#[test]
fn chern_specializations() {
    assert_eq!(
        stdout(&qsphere(&["chern", "--n", "1", "--q-mode", "unit-circle"])),
        "0\n"
    );
    assert_eq!(stdout(&qsphere(&["chern", "--n", "0"])), "0\n");
    let num = qsphere(&["chern", "--n", "1", "--q-mode", "numeric", "--q", "0.5,0"]);
    assert_eq!(num.status.code(), Some(0));
    assert_eq!(stdout(&num).lines().count(), 6);
    let unit = qsphere(&["chern", "--n", "2", "--q-mode", "unit-circle"]);
    assert_ne!(stdout(&unit), "0\n");
}

#[test]
fn every_verify_target_passes() {
    for target in [
        "idempotent",
        "selfadjoint",
        "prop1",
        "prop2",
        "cycle",
        "rep",
        "characters",
        "isomorphism",
    ] {
        let out = qsphere(&["verify", target, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0), "{target}: {}", stdout(&out));
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["pass"], serde_json::Value::Bool(true));
    }
}

#[test]
fn cycle_report_carries_kappa() {
    let out = qsphere(&["verify", "cycle", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["data"]["kappa"], "1/2");
    assert_eq!(v["data"]["kappa_expected"], "1/2");
}

#[test]
fn rep_flags() {
    let out = qsphere(&[
        "verify", "rep", "--zeta", "-0.3,0.4", "--sign", "-", "--q", "0.2,-0.6", "--dim", "16",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = qsphere(&["rep", "--format", "json", "--dim", "8"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["residuals"].as_array().unwrap().len(), 11);
    let out = qsphere(&[
        "rep", "--expr", "z", "--zeta", "0.6,0.8", "--dim", "4", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["matrix"][0][0][0].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn normalize_command() {
    assert_eq!(stdout(&qsphere(&["normalize", "be**al"])), "q*al*be*\n");
    assert_eq!(stdout(&qsphere(&["normalize", "be*al"])), "qb*al*be\n");
    assert_eq!(stdout(&qsphere(&["normalize", "I"])), "I\n");
    let bad = qsphere(&["normalize", "al + foo"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8(bad.stderr).unwrap().contains("foo"));
}

#[test]
fn usage_errors() {
    assert_eq!(qsphere(&["chern", "--n", "5"]).status.code(), Some(2));
    assert_eq!(qsphere(&["chern"]).status.code(), Some(2));
    assert_eq!(qsphere(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qsphere(&["verify", "rep", "--dim", "2"]).status.code(), Some(2));
    assert_eq!(qsphere(&["--help"]).status.code(), Some(0));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("qsphere-cli-{}.json", std::process::id()));
    let out = qsphere(&["chern", "--n", "1", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden("ch1.json"));
    std::fs::remove_file(path).unwrap();
}
