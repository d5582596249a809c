//! End-to-end tests of the command-line interface: exit codes, JSON
//! shapes, the decide -> verify round trip, and byte-stable output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_planecvx"))
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn planecvx");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("planecvx-cli-{name}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(path: &Path, text: &str) {
    fs::write(path, text).unwrap();
}

const DIAG_FAMILY: &str = r#"{"planes": [{"matrix": [["1","0"],["0","2"]]}]}"#;

#[test]
fn decide_convex_single_matrix() {
    let out = run_with_stdin(&["decide"], DIAG_FAMILY);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["outcome"], "convex");
    assert_eq!(v["rule"], "weinstockPair");
    assert_eq!(v["certificateId"], "inline");
    assert!(v["certificate"].is_object());
}

#[test]
fn decide_rejects_zero_denominator() {
    let out = run_with_stdin(
        &["decide"],
        r#"{"planes": [{"matrix": [["1/0","0"],["0","2"]]}]}"#,
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decide_rejects_empty_family() {
    let out = run_with_stdin(&["decide"], r#"{"planes": []}"#);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decide_rejects_unknown_fields() {
    let out = run_with_stdin(&["decide"], r#"{"planes": [], "extra": 1}"#);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decide_verify_round_trip_via_files() {
    let dir = tmpdir("roundtrip");
    let input = dir.join("family.json");
    let output = dir.join("verdict.json");
    write(&input, r#"{"planes": [{"matrix": [["1","-1"],["1","1"]]}]}"#);

    let out = bin()
        .args([
            "decide",
            "--input",
            input.to_str().unwrap(),
            "--output",
            output.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let verdict: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&output).unwrap()).unwrap();
    assert_eq!(verdict["outcome"], "convex");
    let cert_file = dir.join(verdict["certificateId"].as_str().unwrap());
    assert!(cert_file.exists());

    // A fresh process must accept the certificate.
    let out = bin()
        .args(["verify", "--input", cert_file.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());

    // Corrupting the target ray must be rejected with exit 3.
    let mut cert: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&cert_file).unwrap()).unwrap();
    cert["images"][1]["target"]["dirRe"] = serde_json::json!({"rat": "1"});
    cert["images"][1]["target"]["dirIm"] = serde_json::json!({"rat": "0"});
    let bad_file = dir.join("bad.cert.json");
    write(&bad_file, &serde_json::to_string(&cert).unwrap());
    let out = bin()
        .args(["verify", "--input", bad_file.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_rejects_garbage_with_exit_2() {
    let out = run_with_stdin(&["verify"], r#"{"type": "unknown"}"#);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn normalize_spans_to_matrices() {
    let input = r#"{
        "planes": [
            {"span": [["1","0","0","0"], ["0","0","1","0"]]},
            {"span": [["1","1","0","0"], ["0","0","2","1"]]}
        ]
    }"#;
    let out = run_with_stdin(&["normalize"], input);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["planes"][0]["matrix"][0][0], "1");
    assert_eq!(v["planes"][0]["matrix"][1][1], "2");
    // The output is consumable by decide.
    let decided = run_with_stdin(&["decide"], &String::from_utf8(out.stdout).unwrap());
    assert!(decided.status.success());
}

#[test]
fn thomas_classify_small_parameter() {
    let out = bin()
        .args(["thomas", "--eps", "3/10", "--classify"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["omega"], "omegaMinusStar");
    for p in v["pairwise"].as_array().unwrap() {
        assert_eq!(p["outcome"], "convex");
    }
}

#[test]
fn thomas_piped_into_decide_reports_undecided() {
    let out = bin()
        .args(["thomas", "--eps", "3/10"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // Exact entries are not rational (they involve sqrt 3), so decide runs
    // on the approximate matrices rationalized digit by digit.
    let approx = |m: &serde_json::Value| {
        serde_json::json!({ "matrix": [
            [format!("{}", m[0][0].as_str().unwrap()), format!("{}", m[0][1].as_str().unwrap())],
            [format!("{}", m[1][0].as_str().unwrap()), format!("{}", m[1][1].as_str().unwrap())]
        ]})
    };
    let fam = serde_json::json!({
        "planes": [approx(&v["a1Approx"]), approx(&v["a2Approx"])]
    });
    let decided = run_with_stdin(&["decide"], &fam.to_string());
    assert!(decided.status.success());
    let dv: serde_json::Value = serde_json::from_slice(&decided.stdout).unwrap();
    assert_eq!(dv["outcome"], "undecided");
    assert_eq!(dv["omega"], "omegaMinusStar");
}

#[test]
fn thomas_rejects_degenerate_parameter() {
    let out = bin().args(["thomas", "--eps", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn probe_small_grid_runs() {
    let dir = tmpdir("probe");
    let input = dir.join("family.json");
    write(&input, DIAG_FAMILY);
    let out = bin()
        .args([
            "probe",
            "--input",
            input.to_str().unwrap(),
            "--degree",
            "2",
            "--samples",
            "120",
            "--grid",
            "3:1.0:0.1",
            "--seed",
            "5",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["attempted"].as_u64().unwrap() > 0);
    assert!(v["separatedFraction"].as_f64().is_some());
}

#[test]
fn probe_rejects_empty_family() {
    let out = run_with_stdin(&["probe", "--grid", "3:1.0:0.1"], r#"{"planes": []}"#);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_runs_are_byte_identical() {
    let run = || {
        let out = run_with_stdin(&["decide"], r#"{"planes": [{"matrix": [["2","-1"],["1","3"]]}]}"#);
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run(), run());

    let dir = tmpdir("stable");
    let input = dir.join("family.json");
    write(&input, DIAG_FAMILY);
    let probe = || {
        let out = bin()
            .args([
                "probe",
                "--input",
                input.to_str().unwrap(),
                "--degree",
                "2",
                "--samples",
                "60",
                "--grid",
                "2:0.8:0.1",
                "--seed",
                "9",
                "--jobs",
                "2",
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(probe(), probe());
}
