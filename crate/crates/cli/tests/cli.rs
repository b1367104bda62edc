use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_superanalytic");

const SUSY_PAIR: &str = r#"{"generators": 1,
 "g": [[{"mask": 0, "re": [1, 1]}]],
 "psi": [[{"mask": 1, "re": [1, 1]}]],
 "spin": 1}"#;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(BIN)
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn reduce_susy_translation() {
    let o = run(&["reduce", "--format", "json"], SUSY_PAIR);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let t = json(&o);
    let one = serde_json::json!([{"mask": 0, "re": [1, 1], "im": [0, 1]}]);
    let theta1 = serde_json::json!([{"mask": 1, "re": [1, 1], "im": [0, 1]}]);
    assert_eq!(t["f"], serde_json::json!([[], one]));
    assert_eq!(t["chi"], serde_json::json!([theta1]));
    assert_eq!(t["psi"], serde_json::json!([theta1]));
    assert_eq!(t["g"], serde_json::json!([one]));

    let text = run(&["reduce"], SUSY_PAIR);
    assert_eq!(text.status.code(), Some(0));
    assert!(stdout(&text).contains("kind: SCF"));
}

const IDENTITY: &str = r#"{"generators": 1,
 "f": [[], [{"mask": 0, "re": [1, 1]}]],
 "chi": [],
 "psi": [],
 "g": [[{"mask": 0, "re": [1, 1]}]]}"#;

#[test]
fn json_round_trip_is_byte_identical() {
    let first = stdout(&run(&["reduce", "--format", "json"], SUSY_PAIR));
    let doc = format!(r#"{{"outer": {first}, "inner": {IDENTITY}}}"#);
    let composed = run(&["compose", "--format", "json"], &doc);
    assert_eq!(composed.status.code(), Some(0), "{}", stderr(&composed));
    let mut reprinted = serde_json::to_string_pretty(&json(&composed)["composite"]).unwrap();
    reprinted.push('\n');
    assert_eq!(reprinted, first);
}

#[test]
fn output_flag_writes_same_bytes_as_stdout() {
    let first = stdout(&run(&["reduce", "--format", "json"], SUSY_PAIR));
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("pair.json");
    std::fs::write(&input, SUSY_PAIR).unwrap();
    let out = dir.path().join("out.json");
    let o = run(
        &["reduce", "--format", "json", "--input", input.to_str().unwrap(), "--output", out.to_str().unwrap()],
        "",
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), first);
}

#[test]
fn compose_of_translations_adds_offsets() {
    let t = stdout(&run(&["reduce", "--format", "json"], SUSY_PAIR));
    let o = run(&["compose"], &format!(r#"{{"outer": {t}, "inner": {t}}}"#));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("θ~ = (2·θ1) + θ·[(1)]"), "{text}");
    assert!(text.contains("kind: SCF"));
}

#[test]
fn classify_with_vanishing_g_is_nonexistent() {
    let doc = r#"{"generators": 1,
      "f": [[], [{"mask": 0, "re": [1, 1]}]],
      "chi": [],
      "psi": [[{"mask": 1, "re": [1, 1]}]],
      "g": []}"#;
    let o = run(&["classify", "--format", "json"], doc);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["ber_class"]["value"], "NONEXISTENT");
    assert_eq!(v["ber_class"]["derivative"], "NONEXISTENT");
    assert!(v["conditions"]["delta0"].is_object());
}

#[test]
fn malformed_input_reports_position() {
    let o = run(&["classify"], "{\"generators\": 1,\n \"f\": [[] [] ]}");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2 column"), "{}", stderr(&o));
}

#[test]
fn invalid_field_reports_json_path() {
    let doc = r#"{"generators": 1, "g": [[{"mask": 0, "re": [1, 0]}]], "psi": [], "spin": 1}"#;
    let o = run(&["reduce"], doc);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("$.g[0][0].re[1]"), "{}", stderr(&o));

    let o = run(&["reduce"], r#"{"generators": 1, "g": [], "psi": [], "spin": 2}"#);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("$.spin"), "{}", stderr(&o));
}

#[test]
fn missing_input_file_is_usage_error() {
    let o = run(&["classify", "--input", "/nonexistent/transform.json"], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_usage_error() {
    assert_eq!(run(&["verify", "--bogus"], "").status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(run(&["verify", "--format", "yaml"], "").status.code(), Some(2));
}

#[test]
fn unknown_suite_is_usage_error() {
    let o = run(&["verify", "--suite", "no-such-check", "--trials", "1"], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_json_report_passes() {
    let o = run(&["verify", "--suite", "algebra-soundness,chain-rule", "--trials", "5", "--format", "json"], "");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    let text = v.to_string();
    assert!(text.contains("algebra-soundness") && text.contains("chain-rule"));
}

#[test]
fn verify_is_deterministic_apart_from_timing() {
    let args = ["verify", "--suite", "ber-scf", "--trials", "4", "--seed", "7", "--format", "json"];
    let strip = |mut v: Value| {
        for check in v["checks"].as_array_mut().unwrap() {
            check["millis"] = Value::Null;
        }
        v
    };
    let a = strip(json(&run(&args, "")));
    let b = strip(json(&run(&args, "")));
    assert_eq!(a, b);
}

#[test]
fn demo_cocycle_holds() {
    let o = run(&["demo-cocycle", "--format", "json"], "");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["standard_cocycle"], true);
    assert_eq!(v["mixed_cocycle"], true);
}
