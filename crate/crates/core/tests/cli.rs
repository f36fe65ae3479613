use std::io::Write;
use std::process::{Command, Output, Stdio};

use tempfile::NamedTempFile;

const EDGE3: &str = r#"{"m":3,"n":3,"edges":[[0,1,2]]}"#;
const STAR3: &str = r#"{"m":3,"n":7,"edges":[[0,1,2],[0,3,4],[0,5,6]]}"#;
const PATH3: &str = r#"{"m":3,"n":7,"edges":[[0,1,2],[2,3,4],[4,5,6]]}"#;
const THETA: &str = r#"{"m":2,"n":4,"edges":[[0,1],[1,2],[0,2],[1,3],[2,3]]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypertrace"))
}

fn file(json: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn trace_of_a_single_edge_from_stdin() {
    let mut child = bin()
        .args(["trace", "-", "--d", "3"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(EDGE3.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["d"], 3);
    assert_eq!(v["trace"], "9/1");
}

#[test]
fn trace_range_and_csv() {
    let f = file(EDGE3);
    let p = f.path().to_str().unwrap();
    let o = run(&["trace", p, "--d-max", "3"]);
    let rows = json(&o);
    let traces: Vec<&str> = rows.as_array().unwrap().iter().map(|r| r["trace"].as_str().unwrap()).collect();
    assert_eq!(traces, ["12/1", "0/1", "0/1", "9/1"]);
    let csv = stdout(&run(&["--format", "csv", "trace", p, "--d-max", "3"]));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("d,trace"));
    assert_eq!(lines.last(), Some("3,9/1"));
}

#[test]
fn oracle_agrees_with_trace() {
    let f = file(STAR3);
    let p = f.path().to_str().unwrap();
    let closed = json(&run(&["trace", p, "--d", "6"]));
    let brute = json(&run(&["oracle", p, "--d", "6"]));
    assert_eq!(closed["trace"], brute["trace"]);
}

#[test]
fn exit_codes_follow_error_kinds() {
    let bad = file(r#"{"m":3,"n":3,"edges":[[0,1]]}"#);
    let o = run(&["trace", bad.path().to_str().unwrap(), "--d", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));

    let theta = file(THETA);
    let tp = theta.path().to_str().unwrap();
    let o = run(&["trace", tp, "--d", "4"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("oracle --method bruteforce"));

    let o = run(&["oracle", tp, "--d", "12", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(4));
    let o = bin().args(["oracle", tp, "--d", "12"]).env("HYPERTRACE_BUDGET", "10").output().unwrap();
    assert_eq!(o.status.code(), Some(4));

    let o = run(&["oracle", tp, "--d", "4", "--method", "matrix"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["trace"], "50/1");

    assert_eq!(run(&["trace", "/nonexistent/graph.json", "--d", "3"]).status.code(), Some(2));
}

#[test]
fn star_has_larger_estrada_index_than_path() {
    let (a, b) = (file(STAR3), file(PATH3));
    let o = run(&["compare", a.path().to_str().unwrap(), b.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["verdict"], "a_greater");
    let o = run(&["compare", b.path().to_str().unwrap(), a.path().to_str().unwrap()]);
    assert_eq!(json(&o)["verdict"], "b_greater");
}

#[test]
fn estrada_interval_contains_the_spectral_value() {
    let f = file(r#"{"m":2,"n":2,"edges":[[0,1]]}"#);
    let v = json(&run(&["estrada", f.path().to_str().unwrap()]));
    let lower: f64 = v["lower"].as_str().unwrap().parse().unwrap();
    let upper: f64 = v["upper"].as_str().unwrap().parse().unwrap();
    let ee = 1f64.exp() + (-1f64).exp();
    assert!(lower <= ee && ee <= upper);
    assert!(v["D"].as_u64().unwrap() >= 8);
}

#[test]
fn enumerate_lists_families() {
    let o = run(&["enumerate", "hypertrees", "--m", "3", "--k", "3"]);
    assert_eq!(json(&o).as_array().unwrap().len(), 2);
    let o = run(&["enumerate", "unicyclic", "--m", "3", "--z", "4", "--girth", "3"]);
    assert_eq!(json(&o).as_array().unwrap().len(), 2);
    let o = run(&["enumerate", "hypertrees", "--m", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_targets_pass() {
    for args in [
        vec!["verify", "--theorem", "6.6", "--m", "3", "--z", "4"],
        vec!["verify", "--lemma", "3.3"],
        vec!["verify", "--lemma", "6.2", "--d", "3,6,9,12"],
        vec!["verify", "--structure", "tree-root"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert_eq!(json(&o)["status"], "PASS", "{args:?}");
    }
    assert_eq!(run(&["verify", "--theorem", "9.9", "--m", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--lemma", "7.1"]).status.code(), Some(2));
}

#[test]
fn instance_files_with_violated_hypotheses_are_rejected() {
    // The relocated branch must be a hypertree with a nontrivial edge set.
    let f = file(
        r#"[{"name":"empty","lemma":"5.1","m":3,
            "branches":[{"m":3,"n":1,"edges":[],"root":0}],
            "h2":{"m":3,"n":3,"edges":[[0,1,2]],"root":0}}]"#,
    );
    let o = run(&["verify", "--lemma", "5.1", "--instances", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let f = file(STAR3);
    let p = f.path().to_str().unwrap();
    for args in [vec!["trace", p, "--d-max", "12", "--terms"], vec!["estrada", p], vec!["verify", "--lemma", "6.5"]] {
        let one = run(&[&["--threads", "1"][..], &args].concat());
        let many = run(&[&["--threads", "4"][..], &args].concat());
        assert_eq!(one.stdout, many.stdout, "{args:?}");
    }
}

#[test]
fn library_entry_point_matches_binary() {
    let f = file(EDGE3);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = hypertrace::cli::run(["hypertrace", "trace", f.path().to_str().unwrap(), "--d", "3"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(out, run(&["trace", f.path().to_str().unwrap(), "--d", "3"]).stdout);
}
