use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn argshift(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_argshift"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().expect("stdin piped");
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).expect("stdin writable");
        }
    }
    child.wait_with_output().expect("binary exits")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// sl2 with the sign of [e1, e3] flipped.
const CORRUPTED_SL2: &str = r#"{"dim": 3, "brackets": [
  {"i": 1, "j": 2, "terms": {"2": "2"}},
  {"i": 1, "j": 3, "terms": {"3": "2"}},
  {"i": 2, "j": 3, "terms": {"1": "1"}}]}"#;

#[test]
fn report_on_b2() {
    let out = argshift(&["report", "--catalog", "b2", "--a", "0,1", "--seed", "0"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["complete"], true);
    assert_eq!(v["trdeg"], 1);
    assert_eq!(v["b_g"], 1);
    assert_eq!(v["p_g"], "x2");
    assert_eq!(v["verdict"]["agreement"], true);
}

#[test]
fn index_of_abelian() {
    let out = argshift(&["index", "--catalog", "abelian(7)"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["index"], 7);
}

#[test]
fn validate_reports_jacobi_witness() {
    let out = argshift(&["validate", "--input", "-"], Some(CORRUPTED_SL2));
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert_eq!(v["error"]["kind"], "jacobi_violation");
    let w = &v["error"]["witness"];
    for key in ["i", "j", "l", "k", "value"] {
        assert!(!w[key].is_null(), "missing {key}");
    }
    assert!(!out.stderr.is_empty());
}

#[test]
fn validate_accepts_sl2() {
    let good = CORRUPTED_SL2.replace(r#"{"3": "2"}"#, r#"{"3": "-2"}"#);
    let out = argshift(&["validate", "--input", "-"], Some(&good));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["valid"], true);
}

#[test]
fn malformed_json_has_location() {
    let out = argshift(&["index", "--input", "-"], Some("{\"dim\": 2,\n \"brackets\": [}"));
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert_eq!(v["error"]["kind"], "malformed_json");
    assert_eq!(v["error"]["location"]["line"], 2);
}

#[test]
fn input_errors_exit_two() {
    for args in [
        &["index", "--catalog", "nonsense"][..],
        &["shift", "--catalog", "b2", "--a", "1,0"],
        &["shift", "--catalog", "b2", "--a", "1,x"],
        &["report", "--catalog", "b2", "--tol", "-1"],
        &["commute-check", "--catalog", "b2", "--poly", "x3"],
    ] {
        let out = argshift(args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert_eq!(json_of(&out)["schema"], 1);
    }
}

#[test]
fn commute_check_findings() {
    let out = argshift(&["commute-check", "--catalog", "sl2", "--a", "1,0,0", "--poly", "x1", "--poly", "x2"], None);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["commute"], false);
    assert_eq!(v["witness"]["first"], 1);
    assert_eq!(v["witness"]["second"], 2);

    let out = argshift(&["commute-check", "--catalog", "b2+h3"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["source"], "extended");
}

#[test]
fn semiinvariant_with_user_polys() {
    let out = argshift(&["semiinvariant", "--catalog", "b2", "--poly", "x2^3"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["p_g"], "x2");
    assert_eq!(v["checks"][0]["character"], serde_json::json!(["-3", "0"]));

    let out = argshift(&["semiinvariant", "--catalog", "b2", "--poly", "x1"], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn shift_on_sl2() {
    let out = argshift(&["shift", "--catalog", "sl2", "--a", "1,0,0"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["classical"], serde_json::json!(["2 * x1", "x1^2 + 4 * x2 * x3"]));
    assert_eq!(v["trdeg"], 2);
    assert_eq!(v["complete"], true);
}

#[test]
fn pencil_checks_pass_on_catalog() {
    for name in ["b2", "h3", "sl2", "gl2", "b2+h3"] {
        let out = argshift(&["pencil", "--catalog", name, "--seed", "3"], None);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(json_of(&out)["all_checks_pass"], true, "{name}");
    }
}

#[test]
fn completeness_verdicts() {
    for (name, complete) in [("b2", true), ("h3", false), ("b2+h3", false), ("b2+b2", true), ("so3", true)] {
        let out = argshift(&["completeness", "--catalog", name], None);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let v = json_of(&out);
        assert_eq!(v["verdict"]["agreement"], true, "{name}");
        assert_eq!(v["verdict"]["direct_complete"], complete, "{name}");
    }
}

#[test]
fn verbose_keeps_samples() {
    let out = argshift(&["completeness", "--catalog", "b2", "--verbose", "--samples", "6"], None);
    let v = json_of(&out);
    assert_eq!(v["verdict"]["samples"].as_array().map(Vec::len), Some(6));
}

#[test]
fn text_format_is_flat() {
    let out = argshift(&["index", "--catalog", "h3", "--format", "text"], None);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "index: 1"));
    assert!(text.lines().all(|l| l.contains(": ")));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["report", "--catalog", "b2+h3", "--seed", "7", "--verbose"][..],
        &["pencil", "--catalog", "h5", "--seed", "11"],
        &["completeness", "--catalog", "h3", "--seed", "2", "--verbose"],
    ] {
        let first = argshift(args, None);
        let second = argshift(args, None);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn stdin_input_matches_catalog() {
    let doc = r#"{"dim": 2, "brackets": [{"i": 1, "j": 2, "terms": {"2": 1}}]}"#;
    let from_stdin = json_of(&argshift(&["report", "--input", "-", "--a", "0,1"], Some(doc)));
    let from_catalog = json_of(&argshift(&["report", "--catalog", "b2", "--a", "0,1"], None));
    assert_eq!(from_stdin["verdict"], from_catalog["verdict"]);
}
