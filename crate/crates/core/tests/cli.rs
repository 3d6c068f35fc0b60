//! End-to-end runs of the `hypotree` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hypotree"));
    c.env_remove("HYPOTREE_TOL");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_temp(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("hypotree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn energy_of_star_from_stdin() {
    let mut child = bin()
        .args(["energy", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"0 1\n0 2\n0 3\n0 4\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("4.000000"));
}

#[test]
fn energy_json_and_dense_method() {
    let f = write_temp("p4.txt", "# path\n0 1\n1 2\n2 3\n");
    let o = run(&["--json", "--method", "dense", "energy", f.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let expected = 2.0 * (2.0 * (std::f64::consts::PI / 5.0).cos() + 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos());
    assert!((v["energy"].as_f64().unwrap() - expected).abs() < 1e-9);
    assert_eq!(v["method"], "dense_eigensolver");
}

#[test]
fn tolerance_from_environment() {
    let f = write_temp("s3.txt", "0 1\n0 2\n");
    let o = bin().env("HYPOTREE_TOL", "1e-4").args(["--json", "energy", f.to_str().unwrap()]).output().unwrap();
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["error_bound"].as_f64().unwrap() <= 1e-4);
    let o = bin().env("HYPOTREE_TOL", "zero").args(["energy", f.to_str().unwrap()]).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn nullity_of_star() {
    let f = write_temp("s5.txt", "0 1\n0 2\n0 3\n0 4\n");
    let o = run(&["nullity", f.to_str().unwrap()]);
    assert_eq!(stdout(&o).lines().next(), Some("3"));
}

#[test]
fn malformed_input_exits_one() {
    let f = write_temp("bad.txt", "0 1\n1 2\n2 0\n");
    let o = run(&["energy", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["energy", "/nonexistent/tree.txt"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn classify_exit_statuses() {
    assert_eq!(run(&["classify", "9", "4", "--strong"]).status.code(), Some(0));
    assert_eq!(run(&["classify", "10", "4", "--strong"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "8", "3"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "x", "3"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn witness_dot_output() {
    let o = run(&["--dot", "witness", "13", "4", "--strong"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("graph T {"));
    assert_eq!(text.matches(" -- ").count(), 12);
}

#[test]
fn construct_then_coalesce() {
    let a = write_temp("a.txt", &stdout(&run(&["construct", "star", "5"])));
    let b = write_temp("b.txt", &stdout(&run(&["construct", "path", "3"])));
    let o = run(&["construct", "coalesce", a.to_str().unwrap(), "1", b.to_str().unwrap(), "0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn enumerate_counts() {
    let o = run(&["enumerate", "10"]);
    assert_eq!(stdout(&o).lines().count(), 106);
    let o = run(&["enumerate", "10", "--delta-cap", "3"]);
    let lines = stdout(&o);
    assert!(lines.lines().all(|l| l.split(';').count() == 9));
    assert_eq!(run(&["enumerate", "21"]).status.code(), Some(1));
    assert_eq!(run(&["--max-n-override", "21", "enumerate", "3"]).status.code(), Some(0));
}

#[test]
fn verify_paper_reports_every_check() {
    let o = run(&["verify-paper"]);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 22);
    assert_eq!(text.lines().filter(|l| l.starts_with("[FAIL]")).count(), 1);
    assert!(text.contains("energy #1 of 3 trees n=8 delta=5"));
    assert_eq!(o.status.code(), Some(1));
}
