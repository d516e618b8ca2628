use std::process::{Command, Output};

use serde_json::Value;

fn glmn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glmn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn ybe_passes_for_gl11() {
    let out = glmn(&["verify", "ybe", "--m", "1", "--n", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["fail"], 0);
    let ids: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    for form in ["ybe/theta-operator", "ybe/component-signs", "ybe/tilde-plain"] {
        assert!(ids.contains(&form), "{form}");
    }
}

#[test]
fn gl11_current_relations_pass_on_eight_modes() {
    let out = glmn(&[
        "verify", "drinfeld", "--m", "1", "--n", "1", "--trunc", "8", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["summary"]["pass"].as_u64().unwrap() > 10);
    assert_eq!(v["config"]["trunc"], 8);
}

#[test]
fn ungraded_run_fails_the_anticommutators() {
    let out = glmn(&[
        "verify",
        "drinfeld",
        "--m",
        "1",
        "--n",
        "1",
        "--no-grading",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["config"]["grading"], false);
    let failing: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failing.len(), 3, "{failing:?}");
    assert!(failing.iter().all(|id| id.contains("anticommutator")));
    let with_point = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["status"] == "fail")
        .unwrap();
    assert!(with_point["counterexample"]["coordinates"].is_array());
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["verify", "ybe", "--m", "0"][..],
        &["verify", "ybe", "--m", "3", "--n", "3"],
        &["verify", "drinfeld", "--trunc", "3"],
        &["verify", "drinfeld", "--trunc", "6", "--guard", "4"],
        &["verify", "nonsense"],
        &["verify"],
        &["verify", "ybe", "--format", "xml"],
    ] {
        assert_eq!(glmn(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn report_file_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.json"), dir.path().join("b.json")];
    for p in &paths {
        let out = glmn(&[
            "verify",
            "rll",
            "serre",
            "--m",
            "2",
            "--n",
            "1",
            "--format",
            "json",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let a = std::fs::read(&paths[0]).unwrap();
    let b = std::fs::read(&paths[1]).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.last(), Some(&b'\n'));
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["config"]["suites"], serde_json::json!(["rll", "serre"]));
}

#[test]
fn sampled_mode_is_labelled() {
    let out = glmn(&[
        "verify", "drinfeld", "--m", "2", "--n", "1", "--mode", "sampled", "--seed", "7", "--format", "json",
    ]);
    let v = json(&out);
    assert_eq!(v["config"]["mode"], "sampled");
    assert_eq!(v["config"]["seed"], 7);
    let symbolic = json(&glmn(&["verify", "ybe", "--format", "json"]));
    assert!(symbolic["config"].get("seed").is_none());
}

#[test]
fn text_report_has_a_summary_line() {
    let out = glmn(&["verify", "rmatrix-props", "--m", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("gl(2|2)"));
    assert!(text.lines().last().unwrap().starts_with("pass 6  fail 0"));
}
