use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn sepfam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepfam")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn gen(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path.to_str().unwrap()]);
    let out = sepfam(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, v.to_string()).unwrap();
    path
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn solve_and_verify(instance: &Path, algorithm: &str, extra: &[&str]) -> Value {
    let mut args = vec!["solve", algorithm, p(instance)];
    args.extend_from_slice(extra);
    let out = sepfam(&args);
    assert!(out.status.success(), "{algorithm}: {}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out);
    let dir = instance.parent().unwrap();
    let cert = dir.join(format!("{algorithm}.cert.json"));
    std::fs::write(&cert, report["certificate"].to_string()).unwrap();
    let v = sepfam(&["verify", p(instance), p(&cert)]);
    assert_eq!(v.status.code(), Some(0), "{algorithm}: {}", String::from_utf8_lossy(&v.stdout));
    assert_eq!(json(&v)["valid"], Value::Bool(true));
    report
}

#[test]
fn solve_certificates_verify() {
    let dir = TempDir::new().unwrap();
    let tight = gen(&dir, "tight.json", &["logp1-tight", "--n", "2"]);
    solve_and_verify(&tight, "logp1", &[]);
    let sparse =
        gen(&dir, "sparse.json", &["random-family", "--n", "9", "--density", "1/8", "--seed", "3", "--blocks", "2"]);
    let r = solve_and_verify(&sparse, "logpalpha", &["--trace"]);
    assert!(r["stats"]["trace"]["phases"].is_array(), "{r}");
    let lb = gen(&dir, "lb.json", &["satcond-lb", "--m", "2", "--N", "4"]);
    solve_and_verify(&lb, "satcond", &["--seed", "11"]);
    let line = gen(&dir, "line.json", &["collinear", "--n", "5"]);
    assert_eq!(solve_and_verify(&line, "line", &[])["stats"]["size"], 6);
    let curve = gen(&dir, "curve.json", &["moment-curve", "--n", "5", "--d", "3", "--k", "4"]);
    assert_eq!(solve_and_verify(&curve, "halfspace", &[])["stats"]["size"], 20);
}

#[test]
fn randomized_commands_need_a_seed_and_repeat_exactly() {
    let dir = TempDir::new().unwrap();
    let lb = gen(&dir, "lb.json", &["satcond-lb", "--m", "3", "--N", "5"]);
    assert_eq!(sepfam(&["solve", "satcond", p(&lb)]).status.code(), Some(1));
    let a = sepfam(&["solve", "satcond", p(&lb), "--seed", "5"]);
    let b = sepfam(&["solve", "satcond", p(&lb), "--seed", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(sepfam(&["gen", "random-family", "--n", "5", "--density", "1/2"]).status.code(), Some(0));
}

#[test]
fn tampered_certificates_are_rejected() {
    let dir = TempDir::new().unwrap();
    let tight = gen(&dir, "tight.json", &["logp1-tight", "--n", "2"]);
    let report = json(&sepfam(&["solve", "logp1", p(&tight)]));
    let mut cert = report["certificate"].clone();
    cert["selected"] = Value::Array(cert["selected"].as_array().unwrap()[..1].to_vec());
    let bad = write(&dir, "bad.json", &cert);
    let out = sepfam(&["verify", p(&tight), p(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["valid"], Value::Bool(false));
    assert!(!v["witness"].is_null());

    let mut cert = report["certificate"].clone();
    cert["digest"] = Value::String("00".repeat(32));
    let stale = write(&dir, "stale.json", &cert);
    assert_eq!(sepfam(&["verify", p(&tight), p(&stale)]).status.code(), Some(1));
}

#[test]
fn oracle_reports_minimum_and_bound() {
    let dir = TempDir::new().unwrap();
    let line = gen(&dir, "line.json", &["collinear", "--n", "4"]);
    let out = sepfam(&["oracle", "min-geom", p(&line)]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["size"], 4);
    assert_eq!(v["problem"], "min-geom");

    let lb = gen(&dir, "lb.json", &["satcond-lb", "--m", "2", "--N", "3"]);
    assert_eq!(json(&sepfam(&["oracle", "min-constraints", p(&lb)]))["size"], 3);

    let tight = gen(&dir, "tight.json", &["logp1-tight", "--n", "3"]);
    let out = sepfam(&["oracle", "min-separator", p(&tight), "--max-size", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["status"], "bound-exceeded");
    assert_eq!(v["max_size"], 2);
}

#[test]
fn oracle_output_ignores_thread_count() {
    let dir = TempDir::new().unwrap();
    let apex = gen(&dir, "apex.json", &["circle-apex", "--n", "6"]);
    let one = sepfam(&["oracle", "min-geom", p(&apex), "--threads", "1"]);
    let four = sepfam(&["oracle", "min-geom", p(&apex), "--threads", "4"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn vc_commands() {
    let dir = TempDir::new().unwrap();
    let iv = gen(&dir, "iv.json", &["intervals", "--n", "6"]);
    assert_eq!(json(&sepfam(&["vcdim", p(&iv)]))["dimension"], 2);
    let v = json(&sepfam(&["shatter", p(&iv), "--m", "4"]));
    // intervals on a line: at most C(m,0) + C(m,1) + C(m,2) traces
    assert_eq!(v["value"], 11);
    assert_eq!(v["sauer_bound"], 11);
}

#[test]
fn output_is_canonical_json() {
    let dir = TempDir::new().unwrap();
    let fan = gen(&dir, "fan.json", &["diameter-fan", "--n", "8"]);
    let text = std::fs::read_to_string(&fan).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(text.trim_end(), v.to_string());
    assert!(!text.contains('.'), "no floats in instance files");
}
