mod support;

use std::fs;
use std::process::{Command, Output};

use support::data_dir;

fn loopcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopcheck"))
        .args(args)
        .output()
        .unwrap()
}

fn data(name: &str) -> String {
    data_dir().join(name).to_string_lossy().into_owned()
}

#[test]
fn counterexample_s3_matches_golden() {
    let out = loopcheck(&["verify", "counterexample-s3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let golden = fs::read_to_string(
        std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden/counterexample_s3.json"),
    )
    .unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
}

#[test]
fn malformed_table_exits_2_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cay");
    fs::write(&path, "3\n0 1 2\n1 2\n2 0 1\n").unwrap();
    let out = loopcheck(&["group", "validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn non_group_is_rejected_but_valid_as_loop() {
    let f = data("nonassoc3.cay");
    assert_eq!(loopcheck(&["group", "validate", &f]).status.code(), Some(2));
    let out = loopcheck(&["loop", "validate", &f]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("associative false"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(loopcheck(&["verify", "theorem9"]).status.code(), Some(2));
    assert_eq!(
        loopcheck(&["verify", "cameron", "--bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(
        loopcheck(&["group", "info", "/nonexistent.cay"])
            .status
            .code(),
        Some(2)
    );
    let s3 = data("s3.cay");
    let out = loopcheck(&["transversals", &s3, "--subgroup", "0,1,2"]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "{{0,1,2}} is not a subgroup of S3"
    );
}

#[test]
fn transversals_of_s3() {
    let s3 = data("s3.cay");
    let out = loopcheck(&["transversals", &s3, "--subgroup", "0,1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let ts = v["transversals"].as_array().unwrap();
    assert_eq!(ts.len(), 4);
    assert_eq!(ts.iter().filter(|t| t["generating"] == true).count(), 3);
    assert!(ts
        .iter()
        .all(|t| t["generating"] == false || t["solvable"] == false));
}

#[test]
fn loop_commands() {
    let f = data("nonassoc3.cay");
    let out = loopcheck(&["loop", "torsion", &f, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 2);
    let out = loopcheck(&["loop", "solvable", &data("c6.cay")]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "solvable true\n");
    let out = loopcheck(&[
        "loop",
        "derived-series",
        &data("s3.cay"),
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["series"].as_array().unwrap().len(), 3);
}

#[test]
fn user_files_join_the_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let out = loopcheck(&[
        "verify",
        "corollary1",
        "--max-order",
        "6",
        "--group-file",
        &data("v4.cay"),
        "--loop-file",
        &data("nonassoc3.cay"),
        "--format",
        "json",
        "--output",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let groups: Vec<&str> = v["instances"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["group"].as_str().unwrap())
        .collect();
    assert!(groups.contains(&"v4"));
    assert!(groups.contains(&"nonassoc3"));
}

#[test]
fn text_summary_lists_every_suite() {
    let out = loopcheck(&["verify", "all", "--max-order", "8", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for suite in loopcheck::harness::suites::SUITES {
        assert!(
            text.lines().any(|l| l.starts_with(suite)),
            "{suite} missing"
        );
    }
    assert!(text.contains("overall:"));
}
