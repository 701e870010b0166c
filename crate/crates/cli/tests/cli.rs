use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dccode")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const HEADER: &str = "q 5\nmodulus -\nalpha 2\nn 4\nk 1\nm 2\nrole received\ndata\n";

fn with_code() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["build-code", "--q", "5", "--alpha", "2", "--k", "1", "--m", "2", "--out", "code.params"]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("n = 4"));
    assert!(stdout(&out).contains("d_l = 4 3 2, d = 8, dfree = 12"));
    dir
}

#[test]
fn analyze_prints_distances() {
    let dir = with_code();
    let out = run(dir.path(), &["analyze", "--code", "code.params", "--enumerate-d", "--dfree-cap", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("d_l = 4 3 2, d = 8, dfree = 12"), "{text}");
    assert!(text.contains("basic = true, reduced = true, forney indices = 2, degree = 2"), "{text}");
    assert!(text.contains("largest d by enumeration = 8"), "{text}");
    assert!(text.contains("dfree upper bound (degree <= 4) = 12"), "{text}");
}

#[test]
fn decode_reproduces_trace() {
    let dir = with_code();
    let rx = format!("{HEADER}4 0 3 1\n1 1 3 0\n3 2 1 0\n3 2 1 3\n0 1 0 0\n");
    fs::write(dir.path().join("rx.stream"), rx).unwrap();
    let out = run(
        dir.path(),
        &["decode", "--code", "code.params", "--in", "rx.stream", "--out", "dec.stream", "--report", "r.json", "--verbose"],
    );
    assert!(out.status.success(), "{out:?}");
    let dec = fs::read_to_string(dir.path().join("dec.stream")).unwrap();
    assert!(dec.ends_with("data\n2 4 3 1\n1 1 3 0\n1 2 2 0\n4 2 1 3\n0 0 0 0\n"), "{dec}");
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(report["messages"], "1 2 0 0 0");
    assert_eq!(report["overall_distance"], 6);
    assert_eq!(report["cycles"][1]["level"], "level 0");
    assert_eq!(report["cycles"][1]["state"], serde_json::json!([2, 3, 2, 3, 2, 1, 3, 4, 0, 0, 0, 0]));
    assert!(report["cycles"][0]["detail"]["trace"].is_array());
}

#[test]
fn decode_flags_bad_window() {
    let dir = with_code();
    fs::write(dir.path().join("rx.stream"), format!("{HEADER}2 0 0 0\n4 0 0 4\n4 0 0 0\n0 4 3 1\n")).unwrap();
    let out = run(dir.path(), &["decode", "--code", "code.params", "--in", "rx.stream", "--out", "d.stream", "--report", "r.json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("r.json")).unwrap()).unwrap();
    assert_eq!(report["flagged_windows"], serde_json::json!([1]));
    assert_eq!(report["window_distances"][1], 6);
    assert_eq!(report["messages"], "0 0 0 0");
}

#[test]
fn encode_corrupt_decode_pipeline() {
    let dir = with_code();
    let msg = "q 5\nmodulus -\nalpha 2\nn 4\nk 1\nm 2\nrole message\ndata\n1\n2\n0\n3\n4\n4\n1\n";
    fs::write(dir.path().join("msg.stream"), msg).unwrap();
    assert!(run(dir.path(), &["encode", "--code", "code.params", "--in", "msg.stream", "--out", "cw.stream"]).status.success());
    let out = run(
        dir.path(),
        &["corrupt", "--code", "code.params", "--in", "cw.stream", "--out", "rx.stream", "--model", "capped", "--rate", "0.4", "--seed", "5"],
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("max per window of 3 blocks ="));
    let again = run(
        dir.path(),
        &["corrupt", "--code", "code.params", "--in", "cw.stream", "--out", "rx2.stream", "--model", "capped", "--rate", "0.4", "--seed", "5"],
    );
    assert!(again.status.success());
    let rx = fs::read_to_string(dir.path().join("rx.stream")).unwrap();
    assert_eq!(rx, fs::read_to_string(dir.path().join("rx2.stream")).unwrap());
    let out = run(dir.path(), &["decode", "--code", "code.params", "--in", "rx.stream", "--out", "dec.stream"]);
    assert!(out.status.success());
    let cw = fs::read_to_string(dir.path().join("cw.stream")).unwrap();
    let dec = fs::read_to_string(dir.path().join("dec.stream")).unwrap();
    assert_eq!(cw.split("data\n").nth(1), dec.split("data\n").nth(1));
    assert!(stdout(&out).starts_with("u = 1 2 0 3 4 4 1 0 0\n"), "{}", stdout(&out));
}

#[test]
fn simulate_reports_rates() {
    let dir = with_code();
    let out = run(dir.path(), &["simulate", "--code", "code.params", "--trials", "50", "--model", "capped", "--rate", "0.3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("sliding: block error rate = 0.000000, failed trials = 0"), "{text}");
    assert!(text.contains("blockwise: block error rate"), "{text}");
}

#[test]
fn exit_codes() {
    let dir = with_code();
    assert_eq!(run(dir.path(), &["decode", "--code"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["bogus"]).status.code(), Some(2));
    fs::write(dir.path().join("short.stream"), format!("{HEADER}1 2 3\n")).unwrap();
    let out = run(dir.path(), &["decode", "--code", "code.params", "--in", "short.stream", "--out", "x"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(String::from_utf8_lossy(&out.stderr).lines().count(), 1);
    fs::write(dir.path().join("bad.stream"), "role received\n").unwrap();
    assert_eq!(run(dir.path(), &["decode", "--code", "code.params", "--in", "bad.stream", "--out", "x"]).status.code(), Some(3));
    let out = run(dir.path(), &["build-code", "--q", "5", "--k", "3", "--m", "0"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(run(dir.path(), &["build-code", "--q", "6", "--k", "1", "--m", "0"]).status.code(), Some(4));
    assert_eq!(run(dir.path(), &["build-code", "--q", "9", "--k", "1", "--m", "1"]).status.code(), Some(4));
    let out = run(dir.path(), &["build-code", "--q", "9", "--modulus", "1 0 1", "--k", "2", "--m", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("d_l = 7 5, d = 11, dfree = 14"), "{}", stdout(&out));
    fs::write(dir.path().join("far.stream"), format!("{HEADER}1 1 1 1\n2 3 4 0\n1 0 2 3\n")).unwrap();
    let relaxed = run(dir.path(), &["decode", "--code", "code.params", "--in", "far.stream", "--out", "x"]);
    assert!(relaxed.status.success());
    assert!(stdout(&relaxed).contains("fallback cycles = 2"), "{}", stdout(&relaxed));
    let strict = run(dir.path(), &["decode", "--code", "code.params", "--in", "far.stream", "--out", "x", "--strict"]);
    assert_eq!(strict.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&strict.stderr).contains("cycle 0"));
}
