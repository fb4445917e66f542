use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amst-lab")).args(args).env_remove("AMST_LAB_THREADS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("amst-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn enumerate_counts() {
    let o = bin(&["enumerate", "--models", "1", "--sentences", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "4 amsts");
    let o = bin(&["enumerate", "--models", "2", "--sentences", "2", "--canonical"]);
    assert_eq!(stdout(&o).trim(), "88 amsts");
}

#[test]
fn enumerate_json() {
    let o = bin(&["enumerate", "--models", "2", "--sentences", "3", "--emit", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 65536);
}

#[test]
fn over_budget_is_a_usage_error_unless_raised() {
    let o = bin(&["enumerate", "--models", "2", "--sentences", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin(&["--bit-budget", "32", "enumerate", "--models", "2", "--sentences", "4"]);
    assert_eq!(stdout(&o).trim(), "4294967296 amsts");
}

#[test]
fn example_run_prints_verdicts() {
    let o = bin(&["examples", "--run", "fgecq-nefpfecq"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("gECQ-finsat: verified"), "{out}");
    assert!(out.contains("pfECQ-finsat: refuted"), "{out}");
}

#[test]
fn example_list_and_unknown_id() {
    let out = stdout(&bin(&["examples", "--list"]));
    assert_eq!(out.lines().count(), 10);
    assert_eq!(bin(&["examples", "--run", "no-such-example"]).status.code(), Some(2));
}

#[test]
fn mine_round_trips_through_check() {
    let o = bin(&["mine", "--from", "sECQ-sat", "--to", "gECQ-sat", "--models", "1", "--sentences", "4"]);
    let witness = stdout(&o);
    let path = scratch("witness.json");
    std::fs::write(&path, witness.trim()).unwrap();
    let o = bin(&["check", path.to_str().unwrap(), "--emit", "json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["profile"]["sECQ-sat"], "verified");
    assert_eq!(v["profile"]["gECQ-sat"], "refuted");
}

#[test]
fn mine_reports_none_for_an_arrow() {
    let o = bin(&["mine", "--from", "spECQ-sat", "--to", "gECQ-sat", "--models", "2", "--sentences", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "none");
}

#[test]
fn mine_rejects_unknown_principle() {
    assert_eq!(bin(&["mine", "--from", "xECQ", "--to", "gECQ-sat"]).status.code(), Some(2));
}

#[test]
fn check_errors_are_io() {
    assert_eq!(bin(&["check", "/definitely/not/here.json"]).status.code(), Some(3));
    let path = scratch("garbage.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(bin(&["check", path.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn invalid_config_is_usage() {
    assert_eq!(bin(&["--threads", "0", "enumerate", "--models", "1", "--sentences", "1"]).status.code(), Some(2));
    assert_eq!(bin(&["--reading", "sideways", "enumerate", "--models", "1", "--sentences", "1"]).status.code(), Some(2));
    assert_eq!(bin(&["--bound", "0", "examples", "--list"]).status.code(), Some(2));
    assert_eq!(bin(&["examples", "--list", "--emit", "dot"]).status.code(), Some(2));
}

#[test]
fn threads_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_amst-lab"))
        .args(["lattice", "--models", "1", "--sentences", "2", "--emit", "json"])
        .env("AMST_LAB_THREADS", "2")
        .output()
        .unwrap();
    assert!(o.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_amst-lab"))
        .args(["enumerate", "--models", "1", "--sentences", "1"])
        .env("AMST_LAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn lattice_dot() {
    let o = bin(&["lattice", "--models", "1", "--sentences", "3", "--emit", "dot"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("digraph lattice {"));
    assert!(out.contains("\"spECQ-sat\" -> \"gECQ-sat\" [style=solid]"));
}

#[test]
fn theorem_suite_over_a_space() {
    let o = bin(&["enumerate", "--models", "2", "--sentences", "2", "--theorems"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("violations: 0"));
}

#[test]
fn check_reads_stdin() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_amst-lab"))
        .args(["check", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    let amst = amst_core::Amst::from_index(1, 2, 0b1111).unwrap().to_json();
    child.stdin.take().unwrap().write_all(amst.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("cross-check: clean"));
}
