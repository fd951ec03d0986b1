//! End-to-end binary behavior: exit codes, emitted files, config precedence.

use std::path::Path;
use std::process::{Command, Output};

fn bbm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bbm"))
        .args(args)
        .output()
        .expect("bbm binary runs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn sample_happy_path_writes_expected_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let res = bbm(&[
        "sample", "--alpha", "0.7", "--beta", "0.8", "--level", "4", "--paths", "2", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0), "{}", stderr(&res));
    for f in ["manifest.json", "paths.csv", "summary.txt"] {
        assert!(out.join(f).is_file(), "missing {f}");
    }
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["command"], "sample");
    assert_eq!(manifest["kernel"], "bifractional");
    assert_eq!(manifest["level"], 4);
    // stdout lines are mirrored into summary.txt
    let stdout = String::from_utf8_lossy(&res.stdout).into_owned();
    assert_eq!(
        stdout,
        std::fs::read_to_string(out.join("summary.txt")).unwrap()
    );
    assert!(stdout.starts_with("PASS sample:"));
}

#[test]
fn domain_errors_exit_2() {
    let res = bbm(&["sample", "--alpha", "1.2", "--beta", "0.5", "--out", "/tmp/unused-bbm"]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr(&res).contains("config error"));
}

#[test]
fn expansion_hypothesis_violation_exits_2() {
    // αβ = 0.5 fails the αβ > 1/2 requirement
    let res = bbm(&["ito-nisio", "--alpha", "0.5", "--beta", "1.0", "--out", "/tmp/unused-bbm"]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr(&res).contains("αβ > 1/2"));
}

#[test]
fn truncations_must_end_at_full_basis() {
    let res = bbm(&[
        "ito-nisio", "--alpha", "0.9", "--beta", "0.7", "--level", "5", "--paths", "2",
        "--truncations", "8,16", "--out", "/tmp/unused-bbm",
    ]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn level_cap_requires_allow_large() {
    let res = bbm(&["sample", "--alpha", "0.7", "--beta", "0.8", "--level", "14", "--out", "/tmp/unused-bbm"]);
    assert_eq!(res.status.code(), Some(2));
    assert!(stderr(&res).contains("--allow-large"));
}

#[test]
fn config_file_provides_defaults_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "alpha=0.7\nbeta=0.8\nlevel=4\npaths=2\nseed=9\n").unwrap();

    let from_file = dir.path().join("a");
    let res = bbm(&["sample", "--config", cfg.to_str().unwrap(), "--out", from_file.to_str().unwrap()]);
    assert_eq!(res.status.code(), Some(0), "{}", stderr(&res));
    assert_seed(&from_file, 9);

    let overridden = dir.path().join("b");
    let res = bbm(&[
        "sample", "--config", cfg.to_str().unwrap(), "--seed", "11", "--out",
        overridden.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0), "{}", stderr(&res));
    assert_seed(&overridden, 11);
}

fn assert_seed(out: &Path, want: u64) {
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["seed"], want);
}

#[test]
fn unknown_config_key_exits_2_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    std::fs::write(&cfg, "alpha=0.7\nbogus=1\n").unwrap();
    let res = bbm(&["sample", "--config", cfg.to_str().unwrap(), "--out", "/tmp/unused-bbm"]);
    assert_eq!(res.status.code(), Some(2));
    let err = stderr(&res);
    assert!(err.contains("bad.conf:2") && err.contains("bogus"), "{err}");
}

#[test]
fn json_format_emits_json_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let res = bbm(&[
        "sample", "--alpha", "0.7", "--beta", "0.8", "--level", "3", "--paths", "1",
        "--format", "json", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0), "{}", stderr(&res));
    assert!(out.join("paths.json").is_file());
    assert!(!out.join("paths.csv").exists());
    let table: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("paths.json")).unwrap()).unwrap();
    assert_eq!(table["columns"][0], "path");
    assert_eq!(table["rows"].as_array().unwrap().len(), 9);
}

#[test]
fn fractional_kernel_defaults_beta_to_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let res = bbm(&[
        "sample", "--kernel", "fbm", "--alpha", "0.6", "--level", "3", "--paths", "1",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(res.status.code(), Some(0), "{}", stderr(&res));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["kernel"], "fractional");
    assert_eq!(manifest["beta"], 1.0);
}
