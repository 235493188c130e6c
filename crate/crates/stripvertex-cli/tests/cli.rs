//! End-to-end tests of the binary: exit codes, table shapes, and golden
//! fixtures for the emission formats.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stripvertex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn fixture_path(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn open_box_enumeration_counts() {
    // bound (1,1,1) -> 2^3 rows
    let out = run(&["open", "--bound", "1,1,1", "--winding", "1"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 8);

    // all-zero bound -> single row with the degree-zero disk coefficient
    let out = run(&["open", "--bound", "0,0,0", "--winding", "1"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["class"], serde_json::json!([0, 0, 0]));

    let out = run(&["open", "--bound", "2,2,2", "--winding", "1"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 27);
}

#[test]
fn verify_dp3_reports_and_exit_codes() {
    let out = run(&["verify-dp3", "--total-degree", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("class (1 1 1 0) EQUAL: 1"));
    assert!(text.contains("SKIPPED"));
    assert!(text.contains("0 mismatched"));

    // The mirrored convention flips the sign of the bridge and must be
    // caught as a mismatch (this run is what pins the default).
    let out = run(&["verify-dp3", "--total-degree", "3", "--convention", "plus"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("MISMATCH"));
}

#[test]
fn bps_verdicts_and_failure_exit() {
    let out = run(&["bps", "--total-degree", "4", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("class,tangencies,value,verdict\n"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));

    // an empty table (no class maps back to an effective winding) exits 0
    let out = run(&["bps", "--bound", "0,0,0,0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "[]");

    // Inconsistent canonical pairing desynchronizes the Moebius signs and
    // produces a non-polynomial value: exit 1 with the witness in the table.
    let out = run(&[
        "bps",
        "--geometry",
        &fixture_path("mislabeled_pairing.json"),
        "--bound",
        "2,2,2,0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let failed: Vec<_> = rows
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["verdict"] == serde_json::json!(false))
        .collect();
    assert!(!failed.is_empty());
    assert!(failed[0]["witness"]
        .as_str()
        .unwrap()
        .contains("denominator"));
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["open", "--bound", "1,1", "--winding", "1"][..], // wrong dimension
        &["open", "--bound", "1,1,1", "--winding", "0"],
        &["open", "--bound", "1,1,1", "--total-degree", "2"],
        &["open"][..], // no range at all
        &["log", "--total-degree", "2", "--contact", "0:1,2"],
        &["verify-dp3", "--geometry", "no-such-preset"],
        &["bps", "--geometry", "/nonexistent/geometry.json"],
        &["expand", "--value", "{"],
        &["open", "--bound", "1,1,1", "--format", "yaml"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }

    // schema violation: dependent edge classes are rejected with a message
    let out = run(&[
        "open",
        "--geometry",
        &fixture_path("dependent_edges.json"),
        "--bound",
        "1,1",
        "--winding",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("linearly dependent"), "stderr: {err}");
}

#[test]
fn expand_golden_cosecant() {
    let out = run(&[
        "expand",
        "--value",
        r#"{"num":{"0":"1"},"den":{"-1":"-1","1":"1"}}"#,
        "--i-power",
        "1",
        "--order",
        "3",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "exponent,re,im\n-1,1,0\n1,1/24,0\n3,7/5760,0\n"
    );
}

#[test]
fn log_csv_matches_closed_form_invariants() {
    let out = run(&[
        "log",
        "--total-degree",
        "3",
        "--genus",
        "1",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    // genus-0 invariant of the line through one blown-up point: a single line
    assert!(text.contains("1 1 1 0,0,1\n"), "table:\n{text}");
    assert!(text.contains("1 1 1 0,1,0\n"));
}

#[test]
fn json_log_rows_carry_exact_values() {
    let out = run(&["log", "--total-degree", "3"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let row = rows
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["class"] == serde_json::json!([1, 1, 1, 0]))
        .expect("base class present");
    assert_eq!(row["tangencies"], serde_json::json!([1]));
    assert_eq!(row["value"]["num"], serde_json::json!({"0": "1"}));
    assert_eq!(row["value"]["den"], serde_json::json!({"0": "1"}));
}
