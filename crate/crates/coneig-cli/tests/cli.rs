//! End-to-end tests of the `coneig` binary: worked-example outputs, the
//! exit-code contract, stdin handling, and output formatting.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coneig"))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("write fixture");
    path
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

fn stderr_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stderr).unwrap_or_else(|e| {
        panic!(
            "stderr is not JSON ({e}): {}",
            String::from_utf8_lossy(&output.stderr)
        )
    })
}

/// `[[−j, k], [1, −i]]` in the wire format.
const EXAMPLE: &str = r#"{"rows":2,"cols":2,"entries":[["-j","k"],["1","-i"]]}"#;

/// The condiagonalizable matrix of the worked perturbation pair.
const PAIR_A: &str = r#"{"rows":2,"cols":2,"entries":[["-j","k"],["k","-j"]]}"#;

/// Its conjugate-normal partner.
const PAIR_B: &str = r#"{"rows":2,"cols":2,"entries":[["4k","j+k"],["-j-k","4k"]]}"#;

/// The unit-condition condiagonalizer of `PAIR_A` (entries as coefficient
/// quadruples `[a0, a1, a2, a3]`).
const PAIR_P: &str = r#"{"rows":2,"cols":2,"entries":[
    [[0.5, 0.0, 0.0, 0.5], [0.0, 0.5, 0.5, 0.0]],
    [[-0.5, 0.0, 0.0, -0.5], [0.0, 0.5, 0.5, 0.0]]]}"#;

/// The normal pair on which the unconditioned bound fails.
const NORMAL_A: &str = r#"{"rows":2,"cols":2,"entries":[["j","i"],["i","-j"]]}"#;
const NORMAL_B: &str = r#"{"rows":2,"cols":2,"entries":[["j","i"],["i","-0.25j"]]}"#;

#[test]
fn coneig_reports_basal_values_to_three_decimals() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_file(dir.path(), "a.json", EXAMPLE);
    let output = bin().arg("coneig").arg("--input").arg(&a).output().unwrap();
    assert!(output.status.success(), "exit: {:?}", output.status);
    let values = stdout_json(&output);
    let list = values.as_array().expect("JSON list");
    assert_eq!(list.len(), 2);
    let mut got: Vec<(f64, f64)> = list
        .iter()
        .map(|v| (v["a"].as_f64().unwrap(), v["b"].as_f64().unwrap()))
        .collect();
    got.sort_by(|x, y| y.0.total_cmp(&x.0));
    let want = [(1.366, 0.366), (0.366, -1.366)];
    for ((ga, gb), (wa, wb)) in got.iter().zip(want) {
        assert!(
            (ga - wa).abs() <= 1e-3 && (gb - wb).abs() <= 1e-3,
            "basal value ({ga}, {gb}) is not ({wa}, {wb}) to 3 decimals"
        );
    }
}

#[test]
fn ghw_worked_pair_with_supplied_p_reports_24_and_40() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_file(dir.path(), "a.json", PAIR_A);
    let b = write_file(dir.path(), "b.json", PAIR_B);
    let p = write_file(dir.path(), "p.json", PAIR_P);
    let output = bin()
        .args(["ghw", "--a"])
        .arg(&a)
        .arg("--b")
        .arg(&b)
        .arg("--p")
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "exit: {:?}", output.status);
    let report = stdout_json(&output);
    let lhs = report["lhs"].as_f64().unwrap();
    let rhs = report["rhs"].as_f64().unwrap();
    assert!((lhs - 24.0).abs() <= 1e-6, "lhs {lhs}");
    assert!((rhs - 40.0).abs() <= 1e-6, "rhs {rhs}");
    assert_eq!(report["holds"], Value::Bool(true));
}

#[test]
fn normal_counterexample_exits_one_with_failed_bound() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_file(dir.path(), "a.json", NORMAL_A);
    let b = write_file(dir.path(), "b.json", NORMAL_B);
    let output = bin()
        .args(["hw", "--variant", "normal", "--a"])
        .arg(&a)
        .arg("--b")
        .arg(&b)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1), "exit: {:?}", output.status);
    let report = stdout_json(&output);
    assert_eq!(report["holds"], Value::Bool(false));
    assert!(report["lhs"].as_f64().unwrap() > report["rhs"].as_f64().unwrap());
}

#[test]
fn underscore_and_hyphen_variant_spellings_both_parse() {
    let dir = tempfile::tempdir().unwrap();
    // Any diagonal matrix is conjugate normal.
    let diag = r#"{"rows":2,"cols":2,"entries":[["1+j","0"],["0","2k"]]}"#;
    let a = write_file(dir.path(), "a.json", diag);
    for spelling in ["conjugate_normal", "conjugate-normal"] {
        let output = bin()
            .args(["hw", "--variant", spelling, "--a"])
            .arg(&a)
            .arg("--b")
            .arg(&a)
            .output()
            .unwrap();
        assert_eq!(
            output.status.code(),
            Some(0),
            "variant {spelling}: {:?}",
            output.status
        );
    }
}

#[test]
fn verify_hw_campaign_all_trials_hold() {
    let output = bin()
        .args([
            "verify", "--kind", "hw", "--n", "4", "--trials", "100", "--seed", "1",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0), "exit: {:?}", output.status);
    let summary = stdout_json(&output);
    assert_eq!(summary["holds"].as_u64(), Some(100));
    assert_eq!(summary["failures"].as_array().map(Vec::len), Some(0));
    assert_eq!(summary["results"].as_array().map(Vec::len), Some(100));
}

#[test]
fn verify_campaigns_cover_every_kind() {
    for kind in ["ghw", "bf", "gersgorin", "elsner"] {
        let output = bin()
            .args([
                "verify", "--kind", kind, "--n", "3", "--trials", "10", "--seed", "7", "--quiet",
            ])
            .output()
            .unwrap();
        assert_eq!(
            output.status.code(),
            Some(0),
            "kind {kind}: {:?} stderr: {}",
            output.status,
            String::from_utf8_lossy(&output.stderr)
        );
        assert!(output.stdout.is_empty(), "quiet mode wrote stdout");
    }
}

#[test]
fn malformed_entry_exits_two_with_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_file(
        dir.path(),
        "bad.json",
        r#"{"rows":1,"cols":1,"entries":[["1+2x"]]}"#,
    );
    let output = bin().arg("coneig").arg("--input").arg(&bad).output().unwrap();
    assert_eq!(output.status.code(), Some(2), "exit: {:?}", output.status);
    let err = stderr_json(&output);
    assert_eq!(err["error"]["kind"], Value::String("parse".into()));
    let message = err["error"]["message"].as_str().unwrap();
    assert!(message.contains('x'), "message does not name the token: {message}");
}

#[test]
fn missing_file_exits_two_with_io_error() {
    let output = bin()
        .args(["norms", "--input", "/nonexistent/matrix.json"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2), "exit: {:?}", output.status);
    let err = stderr_json(&output);
    assert_eq!(err["error"]["kind"], Value::String("io".into()));
}

#[test]
fn non_condiagonalizing_p_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_file(dir.path(), "a.json", PAIR_A);
    let b = write_file(dir.path(), "b.json", PAIR_B);
    let identity = write_file(
        dir.path(),
        "p.json",
        r#"{"rows":2,"cols":2,"entries":[["1","0"],["0","1"]]}"#,
    );
    let output = bin()
        .args(["ghw", "--a"])
        .arg(&a)
        .arg("--b")
        .arg(&b)
        .arg("--p")
        .arg(&identity)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3), "exit: {:?}", output.status);
    let err = stderr_json(&output);
    assert_eq!(
        err["error"]["kind"],
        Value::String("not-condiagonalizable".into())
    );
}

#[test]
fn dash_input_reads_stdin() {
    let mut child = bin()
        .args(["eig", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(EXAMPLE.as_bytes())
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert!(output.status.success(), "exit: {:?}", output.status);
    let values = stdout_json(&output);
    let list = values.as_array().unwrap();
    assert_eq!(list.len(), 2);
    let r = 1.0 / 2.0f64.sqrt();
    let im = 3.0f64.sqrt() / 2.0f64.sqrt();
    let mut res: Vec<f64> = list.iter().map(|v| v["re"].as_f64().unwrap()).collect();
    res.sort_by(f64::total_cmp);
    assert!((res[0] + r).abs() <= 1e-6 && (res[1] - r).abs() <= 1e-6, "re parts {res:?}");
    for v in list {
        assert!((v["im"].as_f64().unwrap() - im).abs() <= 1e-6);
    }
}

#[test]
fn json_flag_prints_seventeen_significant_digits() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_file(dir.path(), "a.json", EXAMPLE);
    let output = bin()
        .args(["norms", "--json", "--input"])
        .arg(&a)
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    // ‖A‖_F = 2 exactly; the machine format spells out all digits.
    assert!(
        text.contains("2.0000000000000000e0"),
        "missing 17-digit float in: {text}"
    );
    let parsed: Value = serde_json::from_str(&text).expect("17-digit output still parses");
    assert!((parsed["fro"].as_f64().unwrap() - 2.0).abs() <= 1e-15);
}

#[test]
fn bauer_fike_alias_matches_full_name() {
    let dir = tempfile::tempdir().unwrap();
    let a = write_file(dir.path(), "a.json", PAIR_A);
    let e = write_file(
        dir.path(),
        "e.json",
        r#"{"rows":2,"cols":2,"entries":[["0.01","0"],["0","0.01i"]]}"#,
    );
    let mut outputs = Vec::new();
    for name in ["bauer-fike", "bf"] {
        let output = bin()
            .args([name, "--a"])
            .arg(&a)
            .arg("--e")
            .arg(&e)
            .output()
            .unwrap();
        assert_eq!(output.status.code(), Some(0), "{name}: {:?}", output.status);
        outputs.push(output.stdout);
    }
    assert_eq!(outputs[0], outputs[1], "alias output differs");
}
