//! End-to-end runs of the binary: build a code file, push words through
//! encode/decode, and check exit codes for the failure classes.

use std::process::Command;

fn rankmod(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_rankmod"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &std::process::Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn build_encode_decode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("code.json");
    let code_arg = code.to_str().unwrap();

    let out = rankmod(&["build", "--k", "4", "--r", "2", "--t", "1", "--out", code_arg]);
    assert!(out.status.success(), "{out:?}");

    let out = rankmod(&["encode", "--code", code_arg, "--perm", "2,4,1,3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2,4,1,3,5,6");

    // corrupt one position and decode back
    let out = rankmod(&["--json", "decode", "--code", code_arg, "--word", "2,4,1,5,3,6"]);
    assert!(out.status.success());
    let decoded: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(decoded["status"], "corrected");
    assert_eq!(decoded["info"], "2,4,1,3");
    assert_eq!(decoded["errors"], 1);

    let out = rankmod(&["--json", "encode", "--code", code_arg, "--data", "0"]);
    let encoded: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(encoded["info"], "1,2,3,4");
}

#[test]
fn streamed_encode_and_decode() {
    use std::io::Write;
    use std::process::Stdio;

    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("code.json");
    let code_arg = code.to_str().unwrap();
    rankmod(&["build", "--k", "4", "--r", "2", "--t", "1", "--out", code_arg]);

    let mut child = Command::new(env!("CARGO_BIN_EXE_rankmod"))
        .args(["encode", "--code", code_arg])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"2,4,1,3\n1,2,3,4\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let lines: Vec<String> = stdout(&out).lines().map(str::to_owned).collect();
    assert_eq!(lines, vec!["2,4,1,3,5,6", "1,2,3,4,5,6"]);

    let mut child = Command::new(env!("CARGO_BIN_EXE_rankmod"))
        .args(["--json", "decode", "--code", code_arg])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"2,4,1,3,5,6\n2,4,1,5,3,6\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let lines: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["errors"], 0);
    assert_eq!(lines[1]["errors"], 1);
    assert_eq!(lines[1]["info"], "2,4,1,3");
}

#[test]
fn distance_command() {
    let out = rankmod(&["distance", "--a", "1,1,2,2", "--b", "2,1,2,1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "3");

    let out = rankmod(&[
        "distance",
        "--a",
        "0,5,4,0,0,6",
        "--b",
        "0,5,4,0,0,6",
        "--multiset",
        "0^3+4+5+6",
    ]);
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn exit_codes_for_failure_classes() {
    // infeasible parameters
    let out = rankmod(&["build", "--k", "2", "--r", "1", "--t", "1"]);
    assert_eq!(out.status.code(), Some(3));

    // bad input
    let out = rankmod(&["distance", "--a", "1,2", "--b", "1,3"]);
    assert_eq!(out.status.code(), Some(2));

    // unknown arguments are usage errors
    let out = rankmod(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_fast_suite_and_simulation() {
    let out = rankmod(&["--json", "verify", "--max-n", "3", "--suite", "core"]);
    assert!(out.status.success());
    for line in stdout(&out).lines() {
        let report: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(report["passed"], true, "{line}");
    }

    let dir = tempfile::tempdir().unwrap();
    let code = dir.path().join("code.json");
    let code_arg = code.to_str().unwrap();
    rankmod(&["build", "--k", "4", "--r", "2", "--t", "1", "--out", code_arg]);
    let out = rankmod(&[
        "--json", "simulate", "--code", code_arg, "--errors", "1", "--trials", "500", "--seed", "9",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["corrected"], 500);
    assert_eq!(report["miscorrected"], 0);
}

#[test]
fn advise_reports_parameters() {
    let out = rankmod(&["--json", "advise", "--k", "4", "--t", "1"]);
    assert!(out.status.success());
    let advice: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(advice["r"], 2);
    assert_eq!(advice["modulus"], 7);
}
