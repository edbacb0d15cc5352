//! End-to-end tests of the `p234` binary: output documents, exit codes,
//! and stream purity.

use std::process::{Command, Output};

fn p234(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_p234"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn normalize_reduces_to_canonical_form() {
    let out = p234(&["normalize", "--triple", "4,8,16"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "1,1,1\n");
    // The output re-normalizes to itself.
    let again = p234(&["normalize", "--triple", "1,1,1"]);
    assert_eq!(stdout_of(&again), "1,1,1\n");
}

#[test]
fn height_prints_exact_value() {
    let out = p234(&["height", "--triple", "3,5,0"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "729\n");
    // Height is a function of the point, not the representative.
    let scaled = p234(&["height", "--triple", "4,8,16"]);
    let canonical = p234(&["height", "--triple", "1,1,1"]);
    assert_eq!(stdout_of(&scaled), stdout_of(&canonical));
}

#[test]
fn height_over_function_field() {
    let out = p234(&["height", "--triple", "[1],[1],[0,1]", "--field", "5"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    assert_eq!(stdout_of(&out), "5^12\n");
}

#[test]
fn zero_triple_is_a_usage_error() {
    let out = p234(&["height", "--triple", "0,0,0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout_of(&out).is_empty());
    assert!(stderr_of(&out).contains("error"));
}

#[test]
fn invalid_field_is_a_usage_error() {
    for bad in ["4", "3", "2", "six"] {
        let out = p234(&["height", "--triple", "1,1,1", "--field", bad]);
        assert_eq!(out.status.code(), Some(2), "field {bad}");
    }
}

#[test]
fn classify_examples() {
    let out = p234(&["classify", "--triple", "3,5,0"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("nontorsion(cap=12)"));
    assert!(text.contains("a4 = 0"));
    assert!(text.contains("a6 = -2"));
    assert!(text.contains("delta = -1728"));

    let singular = p234(&["classify", "--triple", "1,1,0"]);
    assert_eq!(stdout_of(&singular).lines().next(), Some("singular"));

    let two = p234(&["classify", "--triple", "0,0,1"]);
    assert_eq!(stdout_of(&two).lines().next(), Some("order 2"));

    let five = p234(&["classify", "--triple", "-12,108,-432"]);
    assert_eq!(stdout_of(&five).lines().next(), Some("order 5"));
}

#[test]
fn classify_normalizes_first() {
    // A non-canonical representative classifies like its canonical form.
    let scaled = p234(&["classify", "--triple", "12,40,0"]); // (3,5,0) scaled by 2
    assert_eq!(stdout_of(&scaled).lines().next(), Some("nontorsion(cap=12)"));
}

#[test]
fn enumerate_counts() {
    let out = p234(&["enumerate", "--bound", "1", "--count-only"]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "17\n");
    let ff = p234(&["enumerate", "--field", "5", "--bound", "0", "--count-only"]);
    assert_eq!(stdout_of(&ff), "39\n");
    // threads 0 = all cores; same answer.
    let all = p234(&["enumerate", "--bound", "1", "--count-only", "--threads", "0"]);
    assert_eq!(stdout_of(&all), "17\n");
}

#[test]
fn enumerate_lists_points() {
    let out = p234(&["enumerate", "--bound", "1"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 17);
    assert!(lines.contains(&"0,0,1"));
    assert!(lines.contains(&"0,1,0"));
    let mut dedup = lines.clone();
    dedup.sort();
    dedup.dedup();
    assert_eq!(dedup.len(), 17);
}

#[test]
fn enumerate_writes_file() {
    let path = std::env::temp_dir().join(format!("enum-cli-{}.txt", std::process::id()));
    let to_file = p234(&[
        "enumerate",
        "--bound",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(to_file.status.success());
    assert!(stdout_of(&to_file).is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let direct = p234(&["enumerate", "--bound", "1"]);
    assert_eq!(body, stdout_of(&direct));
}

#[test]
fn census_csv_document_is_pure() {
    let out = p234(&["census", "--bounds", "1", "--cap", "12", "--format", "csv"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2, "header plus exactly one row: {text:?}");
    assert_eq!(
        lines[0],
        "bound,n_total,n_singular,t2,t3,t4,t5,t6,t7,t8,t9,t10,t12,n_nontorsion,frac_nontorsion,cap"
    );
    assert!(lines[1].starts_with("1,17,1,"));
    assert!(lines[1].ends_with(",12"));
}

#[test]
fn census_json_mirrors_csv() {
    let out = p234(&["census", "--bounds", "1,2", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let rows = value.as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["bound"], "1");
    assert_eq!(rows[0]["n_total"], 17);
    assert_eq!(rows[1]["bound"], "2");
    assert!(rows[1]["n_total"].as_u64().unwrap() > 17);
}

#[test]
fn census_text_format() {
    let out = p234(&["census", "--bounds", "1", "--format", "text"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("bound 1: total 17, singular 1"));
    assert!(text.contains("nongeneric fraction by bound"));
}

#[test]
fn census_determinism_across_threads() {
    let one = p234(&["census", "--bounds", "2", "--threads", "1"]);
    let eight = p234(&["census", "--bounds", "2", "--threads", "8"]);
    assert_eq!(stdout_of(&one), stdout_of(&eight));
}

#[test]
fn census_config_file_and_flag_precedence() {
    let dir = std::env::temp_dir();
    let cfg_path = dir.join(format!("census-cfg-{}.json", std::process::id()));
    std::fs::write(
        &cfg_path,
        r#"{"bounds": ["1", "2"], "cap": 12, "format": "csv"}"#,
    )
    .unwrap();
    let from_file = p234(&["census", "--config", cfg_path.to_str().unwrap()]);
    assert!(from_file.status.success(), "stderr: {}", stderr_of(&from_file));
    assert_eq!(stdout_of(&from_file).lines().count(), 3); // header + two rows

    // A flag overrides the file: only bound 1 remains.
    let overridden = p234(&[
        "census",
        "--config",
        cfg_path.to_str().unwrap(),
        "--bounds",
        "1",
    ]);
    assert_eq!(stdout_of(&overridden).lines().count(), 2);
    std::fs::remove_file(&cfg_path).unwrap();
}

#[test]
fn census_rejects_bad_requests() {
    // Decreasing bounds.
    let out = p234(&["census", "--bounds", "2,1"]);
    assert_eq!(out.status.code(), Some(2));
    // Missing bounds entirely.
    let out = p234(&["census"]);
    assert_eq!(out.status.code(), Some(2));
    // Sampling over Q.
    let out = p234(&["census", "--bounds", "1", "--sample-rate", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    // Unknown format.
    let out = p234(&["census", "--bounds", "1", "--format", "xml"]);
    assert_eq!(out.status.code(), Some(2));
    // Unknown config key.
    let dir = std::env::temp_dir();
    let cfg_path = dir.join(format!("census-badcfg-{}.json", std::process::id()));
    std::fs::write(&cfg_path, r#"{"bounds": ["1"], "capp": 12}"#).unwrap();
    let out = p234(&["census", "--config", cfg_path.to_str().unwrap()]);
    std::fs::remove_file(&cfg_path).unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flags_are_rejected() {
    let out = p234(&["height", "--triple", "1,1,1", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = p234(&["transmogrify"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn function_field_census_row() {
    let out = p234(&["census", "--field", "5", "--bounds", "0", "--cap", "24"]);
    assert!(out.status.success(), "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("5^0,39,"));
    assert!(lines[1].ends_with(",24"));
}
