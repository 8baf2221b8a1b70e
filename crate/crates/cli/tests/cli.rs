use std::process::{Command, Output};

use fibersym_tool::json::{parse_eps, parse_matrix};
use fibersym_tool::CommandResult;
use fibersym_core::exactla::{rat, EpsNumber, MatrixQ};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fibersym")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (String, CommandResult) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = run(&all);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stderr.is_empty());
    let text = String::from_utf8(out.stdout).unwrap();
    let parsed = CommandResult::from_json(&text).unwrap();
    (text, parsed)
}

fn stderr_of_failure(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    String::from_utf8(out.stderr).unwrap()
}

const F: &str = "t3^-1 t2^-1 t1^-1 r1^-1 r2^-1 t1^-1 r2 t4^-1 r4^-1 t3^-1";
const G: &str = "s1^-1 s2 s1^-1 s2 s1^-1 s2";

#[test]
fn mcg_reports_the_known_matrix() {
    let (_, r) = run_json(&["mcg", "--surface", "torus4", "--word", F]);
    assert_eq!(r.command, "mcg");
    assert_eq!(r.format_version, "1.0.0");
    let n = parse_matrix(&r.payload["dual_minus_identity"]).unwrap();
    let expected = MatrixQ::from_i64(&[
        [-1, -1, -1, -1, 1],
        [0, 0, 0, 0, -1],
        [1, 1, 1, 1, 1],
        [0, 0, 0, 0, -1],
        [0, 0, 0, 0, 0],
    ]);
    assert_eq!(n, expected);
    assert_eq!(r.payload["jordan"]["blocks_of_size"], serde_json::json!({"1": 1, "2": 2}));
    assert_eq!(r.payload["kernel"]["dim"], 3);
    assert_eq!(r.payload["image"]["dim"], 2);
    assert_eq!(r.payload["torelli"], false);
}

#[test]
fn spherical_and_empty_words_are_torelli() {
    let (_, r) = run_json(&["mcg", "--surface", "sphere4", "--word", G]);
    assert_eq!(r.payload["torelli"], true);
    let (_, r) = run_json(&["mcg", "--surface", "torus4", "--word", ""]);
    assert_eq!(r.payload["torelli"], true);
    assert!(parse_matrix(&r.payload["on_h1"]).unwrap().is_identity());
}

#[test]
fn cohomology_examples() {
    let p2 = |args: &[&str]| run_json(args).1.payload["p_plus"][2].as_i64().unwrap();
    assert_eq!(p2(&["cohomology", "--surface", "torus4", "--word", F]), 10);
    assert_eq!(p2(&["cohomology", "--surface", "torus4", "--word", F, "--eta", "0,1,0"]), 9);
    assert_eq!(p2(&["cohomology", "--surface", "sphere4", "--word", G]), 8);
    let b = |s: &str, w: &str| run_json(&["cohomology", "--surface", s, "--word", w]).1.payload["b"].clone();
    assert_eq!(b("torus4", F), b("sphere4", G));
    assert_eq!(b("torus4", F), serde_json::json!([1, 5, 7, 3, 0]));
}

#[test]
fn crossings_render_epsilon_symbolically() {
    let out = run(&["crossings", "--v1", "-1,1,1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1-3e"));
    assert!(text.contains("start_incidence"));
    assert!(text.contains("coincident_duplicate"));
    let (_, r) = run_json(&["crossings", "--v1", "-1,-1,1"]);
    assert_eq!(r.payload["table_rows"], 7);
    let first = &r.payload["crossings"][0]["event_time"];
    assert_eq!(parse_eps(first).unwrap(), EpsNumber::new(vec![rat(0), rat(3)]));
}

#[test]
fn graphlink_examples() {
    let (_, r) = run_json(&["graphlink", "--n", "2", "--m1", "3", "--m2", "1"]);
    assert_eq!(r.payload["delta_prime"]["text"], "t^6 + t^3 + 1");
    assert_eq!(r.payload["offsets"]["p2_plus_minus_b2"], 7);
    assert_eq!(r.payload["offsets"]["p2_minus_minus_b2"], 6);
    let (_, r) = run_json(&["graphlink", "--n", "2", "--m1", "1", "--m2", "1"]);
    assert_eq!(r.payload["delta_prime"]["degree"], 8);
    assert_eq!(r.payload["theorem_case"], "k=0");
    let (_, r) = run_json(&["graphlink", "--n", "3", "--m1", "1", "--m2", "1"]);
    assert_eq!(r.payload["theorem_case"], Value::Null);
}

#[test]
fn errors_go_to_stderr_with_nonzero_exit() {
    assert!(stderr_of_failure(&["crossings", "--v1", "1,0,-1"]).contains("degenerate"));
    assert!(stderr_of_failure(&["graphlink", "--n", "2", "--m1", "-27", "--m2", "1"]).contains("i = 1"));
    assert!(stderr_of_failure(&["graphlink", "--n", "2", "--m1", "-3", "--m2", "1"]).contains("i = 2"));
    let e = stderr_of_failure(&["mcg", "--surface", "torus4", "--word", "t1 q7"]);
    assert!(e.contains("token 2") && e.contains("column 4"), "{e}");
    assert!(stderr_of_failure(&["mcg", "--surface", "klein", "--word", ""]).contains("klein"));
    assert!(stderr_of_failure(&["cohomology", "--surface", "torus4", "--word", F, "--eta", "1,2"]).contains("3"));
    assert!(stderr_of_failure(&["crossings", "--v1", "1,2"]).contains("three"));
}

#[test]
fn json_is_deterministic_and_round_trips() {
    let cases: [&[&str]; 4] = [
        &["mcg", "--surface", "torus4", "--word", F],
        &["cohomology", "--surface", "torus4", "--word", F, "--eta", "1/2,0,-1"],
        &["crossings", "--v1", "-1,1,1"],
        &["graphlink", "--n", "2", "--m1", "5", "--m2", "9"],
    ];
    for args in cases {
        let (a, ra) = run_json(args);
        let (b, _) = run_json(args);
        assert_eq!(a, b);
        assert_eq!(ra.to_json().trim_end(), a.trim_end());
        let v: Value = serde_json::from_str(&a).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["command", "format_version", "inputs", "payload"]);
    }
}
