//! Exit-code contract and file-output behavior of the binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_flagjacobi"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("flagjacobi-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("signal-free exit")
}

#[test]
fn eval_golden_point_prints_the_expected_entry() {
    let out = bin()
        .args([
            "eval",
            "--k",
            "2",
            "--x",
            "0,0.7071067811865476,0,0,0,0.7071067811865476",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let m11 = v["matrix"][0][0].as_f64().unwrap();
    assert!((m11 - 0.375).abs() < 1e-12);
    // decimal input: no exact block
    assert!(v.get("exact").is_none());
}

#[test]
fn eval_exact_input_carries_exact_strings() {
    let out = bin()
        .args([
            "eval",
            "--k",
            "3",
            "--x",
            "0,1/2*sqrt2,0,0,0,1/2*sqrt2",
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let exact = v["exact"]
        .as_array()
        .expect("exact entries for exact input");
    assert_eq!(exact.len(), 21);
    // entry (1,3) is upper index 2 and equals 3/16
    assert_eq!(exact[2], "3/16");
}

#[test]
fn eval_zero_matrix_for_axis_point() {
    let out = bin()
        .args(["eval", "--k", "3", "--x", "1,0,0,0,0,0", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for i in 0..6 {
        for j in 0..6 {
            assert_eq!(v["matrix"][i][j].as_f64().unwrap(), 0.0);
        }
    }
}

#[test]
fn usage_errors_exit_2() {
    // out-of-range order
    let out = bin()
        .args(["eval", "--k", "9", "--x", "1,0,0,0,0,0"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    // malformed vector
    let out = bin()
        .args(["eval", "--k", "2", "--x", "1,2,zzz,0,0,0"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    // wrong arity
    let out = bin()
        .args(["eval", "--k", "2", "--x", "1,2,3"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn audit_exit_codes_follow_the_verdict() {
    let out = bin()
        .args(["audit", "--variant", "printed"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("k=3: FAIL"));
    let out = bin()
        .args(["audit", "--variant", "repaired"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn audit_json_format_carries_the_same_verdicts() {
    let out = bin()
        .args(["audit", "--variant", "printed", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["trace"]["passed"], false);
    let orders = v["trace"]["orders"].as_array().unwrap();
    assert_eq!(orders[0]["trace_is_zero"], true); // k = 2
    assert_eq!(orders[1]["trace_is_zero"], false); // k = 3
}

#[test]
fn missing_calibration_with_no_calibrate_exits_3() {
    let dir = tmp("missing");
    let out = bin()
        .args(["rank", "--no-calibrate", "--out-dir"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    let out = bin()
        .args(["pipeline", "--no-calibrate", "--out-dir"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn pipeline_with_too_few_samples_fails_in_the_rank_stage() {
    let dir = tmp("few");
    let out = bin()
        .args(["pipeline", "--samples", "10", "--out-dir"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("ill-conditioned"), "{text}");
    assert!(text.contains("first failing stage: rank"), "{text}");
}

#[test]
fn calibrate_persists_and_verify_consumes() {
    let dir = tmp("verify");
    let out = bin()
        .args(["calibrate", "--samples", "120", "--out-dir"])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(dir.join("calibration.json").exists());
    let out = bin()
        .args([
            "verify",
            "--no-calibrate",
            "--samples",
            "80",
            "--seed",
            "7",
            "--out-dir",
        ])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn fields_csv_has_the_column_schema() {
    let dir = tmp("fields");
    let out = bin()
        .args([
            "fields",
            "--x",
            "1,0,0,0,0,0",
            "--t-max",
            "0.5",
            "--h",
            "0.01",
            "--format",
            "csv",
            "--samples",
            "60",
            "--out-dir",
        ])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("t,y1,y2,y3,y4,y5,y6,dy1,dy2,dy3,dy4,dy5,dy6"));
    // header embeds the config echo
    assert!(text.contains("# seed = 42"));
}

#[test]
fn conjugate_reports_points_for_an_axis_geodesic() {
    let dir = tmp("conjugate");
    let out = bin()
        .args([
            "conjugate",
            "--x",
            "1,0,0,0,0,0",
            "--t-max",
            "5",
            "--format",
            "csv",
            "--samples",
            "60",
            "--out-dir",
        ])
        .arg(&dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    // first conjugate point at π/√2
    let expect = std::f64::consts::PI / 2.0f64.sqrt();
    let line = text
        .lines()
        .find(|l| !l.starts_with('#') && l.contains(',') && !l.starts_with("t,"))
        .expect("a data row");
    let t: f64 = line.split(',').next().unwrap().parse().unwrap();
    assert!((t - expect).abs() < 1e-6, "first point {t} vs {expect}");
}
