//! End-to-end checks of the command-line contract: exit codes, report
//! determinism, and error texts.

use std::path::Path;
use std::process::{Command, Output};

fn lforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).into_owned()
}

/// Report text with the nondeterministic timing line removed.
fn strip_timing(report: &str) -> String {
    report
        .lines()
        .filter(|line| !line.trim_start().starts_with("\"timing_ms\""))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn help_and_version_exit_zero() {
    for args in [
        vec!["--help"],
        vec!["--version"],
        vec!["munzner", "--help"],
        vec!["fiber-report", "--help"],
    ] {
        let out = lforge(&args);
        assert_eq!(out.status.code(), Some(0), "args {args:?}");
    }
    assert!(stdout(&lforge(&["--version"])).contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["no-such-command"],
        vec!["check-laplacian"],
        vec!["munzner", "x1^2", "--bogus-flag"],
        vec!["jordan", "-n", "2"],
    ] {
        let out = lforge(&args);
        assert_eq!(out.status.code(), Some(1), "args {args:?}");
        assert!(!stderr(&out).is_empty(), "args {args:?} should explain");
    }
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad_toml = dir.path().join("bad.toml");
    std::fs::write(&bad_toml, "dimension = \n").unwrap();
    let bad_generator = dir.path().join("gen.toml");
    std::fs::write(&bad_generator, "dimension = 2\ngenerators = [\"x3\"]\n").unwrap();

    let cases: Vec<Vec<&str>> = vec![
        vec!["check-laplacian", "/nonexistent/algebra.toml"],
        vec!["check-laplacian", bad_toml.to_str().unwrap()],
        vec!["check-laplacian", bad_generator.to_str().unwrap()],
        vec!["check-laplacian", "--builtin", "octahedral:3"],
        vec!["munzner", "x1 +", "-n", "2"],
        vec!["fiber-report", "--builtin", "dihedral:3", "--tol-value", "0"],
    ];
    for args in cases {
        let out = lforge(&args);
        assert_eq!(out.status.code(), Some(1), "args {args:?}");
        let text = stderr(&out);
        assert!(text.starts_with("error:"), "args {args:?} gave: {text}");
    }
}

#[test]
fn verdicts_map_to_exit_codes() {
    let out = lforge(&["contains", "x1^4 - x2^4", "--builtin", "dihedral:2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict: pass"));

    let out = lforge(&["contains", "x1^3", "--builtin", "dihedral:2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("verdict: fail"));

    let out = lforge(&["check-laplacian", "--builtin", "dihedral:3"]);
    assert_eq!(out.status.code(), Some(0));

    let out = lforge(&["reynolds", "x1^2", "--builtin", "dihedral:3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict: info"));
}

#[test]
fn reports_are_deterministic_up_to_timing() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    let second = dir.path().join("second.json");
    let run = |path: &Path| {
        let out = lforge(&[
            "fiber-report",
            "--builtin",
            "dihedral:3",
            "--samples",
            "60",
            "--seed",
            "11",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        stdout(&out)
    };
    let stdout_first = run(&first);
    let stdout_second = run(&second);
    assert_eq!(stdout_first, stdout_second, "stdout must be reproducible");

    let report_first = std::fs::read_to_string(&first).unwrap();
    let report_second = std::fs::read_to_string(&second).unwrap();
    assert_eq!(strip_timing(&report_first), strip_timing(&report_second));
    assert_ne!(strip_timing(&report_first), report_first.trim_end());
}

#[test]
fn report_document_shape() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = lforge(&[
        "munzner",
        "x1^2 - x2^2",
        "-n",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for key in [
        "command",
        "version",
        "config",
        "verdict",
        "results",
        "witnesses",
        "timing_ms",
    ] {
        assert!(value.get(key).is_some(), "missing key {key}");
    }
    assert_eq!(value["command"], "munzner");
    assert_eq!(value["verdict"], "pass");
    assert_eq!(value["config"]["dimension"], 2);
}

#[test]
fn out_path_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("env-report.json");
    let out = Command::new(env!("CARGO_BIN_EXE_lforge"))
        .args(["b-matrix", "--builtin", "dihedral:2"])
        .env("LFORGE_OUT", &path)
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
    assert!(path.exists(), "LFORGE_OUT should place the report");
}
