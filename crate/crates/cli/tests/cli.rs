use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use camscat_core::scattering::free_sigma;
use camscat_core::Complex64;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_camscat"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn rows(out: &Output) -> Vec<csv::StringRecord> {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    csv::Reader::from_reader(out.stdout.as_slice()).records().map(Result::unwrap).collect()
}

fn f(rec: &csv::StringRecord, i: usize) -> f64 {
    rec[i].parse().unwrap()
}

fn mod_pi(x: f64) -> f64 {
    x - PI * (x / PI).round()
}

#[test]
fn zero_medium_gives_hard_disk_shifts() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "zero.json", r#"{"r0": 0.5, "R": 2.0}"#);
    let out = run(&["direct", "--medium", s(&m), "--lmax", "10", "--grid", "256"]);
    let recs = rows(&out);
    assert_eq!(recs.len(), 21);
    for r in &recs {
        let l: f64 = r[0].parse().unwrap();
        let want = free_sigma(Complex64::new(l.abs(), 0.0), 0.5, 0.0).unwrap().arg() / 2.0;
        assert!(mod_pi(f(r, 3) - want).abs() < 1e-9, "l = {l}: {} vs {want}", f(r, 3));
    }
}

#[test]
fn flux_only_medium_has_flux_tails() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "ab.json", r#"{"preset": "aharonov_bohm", "flux": 0.4}"#);
    let recs = rows(&run(&["direct", "--medium", s(&m), "--lmax", "30", "--grid", "256"]));
    let first = &recs[0];
    let last = &recs[recs.len() - 1];
    assert!(mod_pi(f(last, 3) - 0.2 * PI).abs() < 1e-6, "{}", f(last, 3));
    assert!(mod_pi(f(first, 3) + 0.2 * PI).abs() < 1e-6, "{}", f(first, 3));
}

#[test]
fn malformed_medium_exits_2() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "bad.json", "{ not json");
    let out = run(&["direct", "--medium", s(&m)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed"));
    assert_eq!(run(&["direct"]).status.code(), Some(2));
    assert_eq!(run(&["direct", "--medium", s(&m), "--grid", "10"]).status.code(), Some(2));
}

#[test]
fn verify_passes_on_zero_medium_and_fails_on_corrupted_tolerance() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "zero.json", r#"{"r0": 0.5, "R": 2.0}"#);
    let ok = run(&["verify", "--medium", s(&m), "--grid", "256"]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    let bad = run(&["verify", "--medium", s(&m), "--grid", "256", "--tol", "wronskian=1e-30"]);
    assert_eq!(bad.status.code(), Some(1));
    let recs: Vec<_> = csv::Reader::from_reader(bad.stdout.as_slice()).records().map(Result::unwrap).collect();
    let failed: Vec<&str> = recs.iter().filter(|r| &r[1] == "false").map(|r| r.get(0).unwrap()).collect();
    assert_eq!(failed, ["wronskian"]);
}

#[test]
fn verify_passes_on_reference_medium() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn discriminate_verdicts_and_flux_mismatch() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.json", r#"{"preset": "bump_step", "flux": 0.3}"#);
    let b = write(&dir, "b.json", r#"{"preset": "spline_bump", "flux": 0.3}"#);
    let c = write(&dir, "c.json", r#"{"preset": "bump_step", "flux": -0.2}"#);
    let json = |out: &Output| -> serde_json::Value { serde_json::from_slice(&out.stdout).unwrap() };

    let same = run(&["discriminate", "--medium", s(&a), "--medium-b", s(&a), "--format", "json", "--lmax", "30"]);
    assert_eq!(same.status.code(), Some(0));
    let v = json(&same);
    assert_eq!(v["meta"]["verdict"], "identical");
    assert!(v["meta"]["max_abs"].as_f64().unwrap() <= 1e-7);

    let diff = run(&["discriminate", "--medium", s(&a), "--medium-b", s(&b), "--format", "json", "--lmax", "30"]);
    assert_eq!(diff.status.code(), Some(0));
    assert_eq!(json(&diff)["meta"]["verdict"], "distinct");

    let mism = run(&["discriminate", "--medium", s(&a), "--medium-b", s(&c), "--lmax", "30"]);
    assert_eq!(mism.status.code(), Some(4));
    let err = String::from_utf8_lossy(&mism.stderr);
    assert!(err.contains("0.300000") && err.contains("-0.200000"), "{err}");
}

#[test]
fn output_is_deterministic_and_thread_independent() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", r#"{"preset": "bump_step", "flux": 0.3}"#);
    let args = ["direct", "--medium", s(&m), "--lmax", "20", "--grid", "256"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let one = rows(&run(&[&args[..], &["--threads", "1"]].concat()));
    let four = rows(&run(&[&args[..], &["--threads", "4"]].concat()));
    for (x, y) in one.iter().zip(&four) {
        for i in 1..4 {
            assert!((f(x, i) - f(y, i)).abs() <= 1e-12);
        }
    }
}

#[test]
fn json_output_carries_schema_version_and_writes_files() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", r#"{"preset": "bump_step", "flux": 0.3}"#);
    let out = dir.path().join("flux.json");
    let st = run(&["flux", "--medium", s(&m), "--format", "json", "--out", s(&out)]);
    assert!(st.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "flux");
    assert!((v["rows"][0][0].as_f64().unwrap() - 0.3).abs() < 1e-3);
}

#[test]
fn cam_scan_and_bessel_tables() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", r#"{"preset": "bump_step", "flux": 0.3}"#);
    let recs = rows(&run(&["cam-scan", "--medium", s(&m), "--scan", "-2:2:5,-1:1:3"]));
    assert_eq!(recs.len(), 15);
    assert!(recs.iter().all(|r| r[4].is_empty()));
    assert_eq!(run(&["cam-scan", "--medium", s(&m), "--scan", "bogus"]).status.code(), Some(2));

    let b = rows(&run(&["bessel", "--nu", "0.5", "--r", "1.0"]));
    let want = (2.0 / PI).sqrt() * 1f64.sin();
    assert!((f(&b[0], 3) - want).abs() < 1e-13);
}
