use std::path::PathBuf;
use std::process::{Command, Output};

fn oagw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oagw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn passing_suite_exits_zero() {
    let o = oagw(&["check", "hahn-ring", "--samples", "50"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("hahn-ring"));
}

#[test]
fn unknown_suite_is_an_error() {
    let o = oagw(&["check", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn wrong_construction_is_an_error() {
    let o = oagw(&["check", "lambda1-formula", "--construction", "gamma", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eval_reports_witness() {
    let o = oagw(&["eval", "--formula", "E x. x + x = a", "--bind", "a={G2[0].c: 1}"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.contains("True"), "{out}");
    assert!(out.contains("1/2"), "{out}");
}

#[test]
fn eval_quantifier_free() {
    let o = oagw(&["eval", "--formula", "0 < 0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("False"));
}

#[test]
fn eval_rejects_trivial_modulus() {
    let o = oagw(&["eval", "--formula", "cong(1, x, y)", "--bind", "x=0", "--bind", "y=0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("modulus"));
}

#[test]
fn corpus_is_reproducible() {
    let args = ["gen", "corpus", "--kind", "ea", "--count", "5", "--seed", "7"];
    let a = oagw(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a).lines().count(), 5);
    assert_eq!(stdout(&a), stdout(&oagw(&args)));
}

#[test]
fn json_reports_are_byte_identical() {
    let run = |name: &str, extra: &[&str]| {
        let path = scratch(name);
        let mut args = vec!["check", "psi-vs-search", "--samples", "30", "--json", path.to_str().unwrap()];
        args.extend_from_slice(extra);
        assert_eq!(oagw(&args).status.code(), Some(0));
        std::fs::read(path).unwrap()
    };
    let par = run("psi-par.json", &[]);
    let seq = run("psi-seq.json", &["--sequential"]);
    assert_eq!(par, seq);
    let v: serde_json::Value = serde_json::from_slice(&par).unwrap();
    assert_eq!(v["suite"], "psi-vs-search");
    assert!(v.get("wall_time_ms").is_none());
}

#[test]
fn demo_runs() {
    let o = oagw(&["demo", "lambda-repair"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn list_names_everything() {
    let out = stdout(&oagw(&["list"]));
    for name in ["psi-vs-search", "truncated-inverse", "gamma-counterexample"] {
        assert!(out.contains(name), "{name}");
    }
}
