use std::path::PathBuf;
use std::process::{Command, Output};

use fsgraph::cert::builtin_corpus;
use fsgraph::fs::FsReport;
use fsgraph::random_lab::parse_csv;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsgraph")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn hexagon_against_k33_has_twelve_components() {
    let (x, y) = (data("k33.bg"), data("c6.bg"));
    let o = run(&["components", "--x", x.to_str().unwrap(), "--y", y.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("component_count = 12"));
}

#[test]
fn json_output_round_trips() {
    let (x, y) = (data("k33.bg"), data("c6.bg"));
    let o = run(&["components", "--x", x.to_str().unwrap(), "--y", y.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tool"], "fsgraph");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    let rep: FsReport = serde_json::from_value(v["result"].clone()).unwrap();
    assert_eq!(rep.component_count, 12);
    assert_eq!(rep.parity_split, (360, 360));
}

#[test]
fn builtin_corpus_is_accepted() {
    let o = run(&["certify", "--corpus", "builtin"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("22 cases, 22 accepted"));
}

#[test]
fn tampered_case_is_a_finding() {
    let mut c = builtin_corpus().into_iter().next().unwrap();
    c.sequence.0.pop();
    let path = std::env::temp_dir().join(format!("fsgraph-tampered-{}.gadget", std::process::id()));
    std::fs::write(&path, c.to_gadget_string()).unwrap();
    let o = run(&["certify", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("REJECTED"));
}

#[test]
fn listed_sequences_are_shortest() {
    let o = run(&["shortest", "--corpus", "builtin"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("22 cases, 0 mismatches"));
}

#[test]
fn missing_file_is_a_usage_error() {
    let y = data("c6.bg");
    let o = run(&["components", "--x", "missing.bg", "--y", y.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing.bg"));
}

#[test]
fn parse_errors_name_file_and_line() {
    let (x, y) = (data("broken.bg"), data("c6.bg"));
    let o = run(&["components", "--x", x.to_str().unwrap(), "--y", y.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("broken.bg:3"), "{}", stderr(&o));
}

#[test]
fn unknown_flags_are_errors() {
    assert_eq!(run(&["components", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["certify", "--corpus", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn counterexamples_exit_one() {
    assert_eq!(run(&["scan", "--r", "3", "--bound", "5"]).status.code(), Some(1));
    let o = run(&["scan", "--r", "3", "--bound", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("counterexamples=0"));
}

#[test]
fn criterion_needs_r5() {
    let x = data("k33.bg");
    assert_eq!(run(&["criterion", "--x", x.to_str().unwrap()]).status.code(), Some(2));
    let c10 = data("c10.bg");
    let o = run(&["criterion", "--x", c10.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("two_components = false"));
}

#[test]
fn sweep_csv_is_stamped_parseable_and_worker_independent() {
    let args = ["sweep", "--r", "64", "--offsets", "-1,0,1", "--samples", "200", "--seed", "9"];
    let one = run(&[&args[..], &["--workers", "1"]].concat());
    let three = run(&[&args[..], &["--workers", "3"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one), stdout(&three));
    let text = stdout(&one);
    assert!(text.starts_with("# fsgraph ") && text.lines().next().unwrap().contains("seed=9"));
    assert_eq!(parse_csv(&text).unwrap().len(), 3);
}

#[test]
fn generated_seeds_are_reported_and_replay() {
    let first = run(&["sweep", "--r", "32", "--p", "0.1", "--samples", "50", "--format", "text"]);
    let out = stdout(&first);
    let seed = out.lines().next().unwrap().split("seed=").nth(1).unwrap().split(' ').next().unwrap().to_string();
    let again = run(&["sweep", "--r", "32", "--p", "0.1", "--samples", "50", "--format", "text", "--seed", &seed]);
    assert_eq!(out, stdout(&again));
}

#[test]
fn exchange_reports_a_witness() {
    let k = data("k33.bg");
    let k = k.to_str().unwrap();
    let o = run(&["exchange", "--x", k, "--y", k, "--u", "0", "--v", "3", "--state", "0 1 2 3 4 5"]);
    assert!(stdout(&o).contains("exchangeable in 1 swaps"));
    let o = run(&["exchange", "--x", k, "--y", k, "--u", "0", "--v", "1"]);
    assert!(stdout(&o).contains("not exchangeable"));
}
