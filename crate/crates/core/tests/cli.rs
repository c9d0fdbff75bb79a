use std::path::Path;
use std::process::{Command, Output};

use ernstlab::cli::{Grid, Scenario, Source, CSV_HEADER};
use ernstlab::potentials::{FamilyParams, SolutionFamily};
use ernstlab::transforms::Transform;
use serde_json::Value;

fn ernstlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ernstlab"))
        .args(args)
        .env_remove("ERNSTLAB_THREADS")
        .output()
        .expect("binary runs")
}

fn x1_scenario() -> Scenario {
    Scenario::new(
        Source::Family(SolutionFamily::X1(
            FamilyParams::new(1.0, 1.0, 0.0).unwrap(),
        )),
        Grid::square(0.5, 1.5, 8),
    )
}

fn write_config(dir: &Path, name: &str, scenario: &Scenario) -> String {
    let path = dir.join(name);
    std::fs::write(&path, scenario.to_json().unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn run_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "x1.json", &x1_scenario());
    let out = ernstlab(&["run", &config]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(dir.path().join("x1.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some(CSV_HEADER));
    assert_eq!(csv.lines().count(), 65);
    let summary: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("x1.summary.json")).unwrap())
            .unwrap();
    assert!(summary["max_abs_resK"].as_f64().unwrap() <= 1e-10);
    assert!(summary["max_abs_resL"].as_f64().unwrap() <= 1e-10);
    assert!(summary["invariant_checks"].is_array());
}

#[test]
fn x5_scenario_passes() {
    let dir = tempfile::tempdir().unwrap();
    let s = x1_scenario().with_transforms(vec![Transform::X5 { epsilon: 0.3 }]);
    let config = write_config(dir.path(), "x5.json", &s);
    let out = ernstlab(&[
        "run",
        &config,
        "--out-dir",
        dir.path().join("out").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(dir.path().join("out/x5.csv").exists());
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "s.json", &x1_scenario());
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let out_dir = dir.path().join(threads);
        let status = Command::new(env!("CARGO_BIN_EXE_ernstlab"))
            .args(["run", &config, "--out-dir", out_dir.to_str().unwrap()])
            .env("ERNSTLAB_THREADS", threads)
            .output()
            .unwrap()
            .status;
        assert!(status.success());
        outputs.push((
            std::fs::read(out_dir.join("s.csv")).unwrap(),
            std::fs::read(out_dir.join("s.summary.json")).unwrap(),
        ));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn invalid_thread_cap_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "s.json", &x1_scenario());
    let out = Command::new(env!("CARGO_BIN_EXE_ernstlab"))
        .args(["verify", &config])
        .env("ERNSTLAB_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn zero_b_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"schema":1,"source":{"family":"x1","A":1,"B":0,"C":0},
            "grid":{"f_min":0.5,"f_max":1.5,"f_count":4,"g_min":0.5,"g_max":1.5,"g_count":4}}"#,
    )
    .unwrap();
    let out = ernstlab(&["run", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("configuration error"));
    assert!(!dir.path().join("bad.csv").exists());
}

#[test]
fn verify_respects_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), "s.json", &x1_scenario());
    assert!(ernstlab(&["verify", &config, "--tol", "1e-9"])
        .status
        .success());
    let out = ernstlab(&["verify", &config, "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn lie_table_text_and_json() {
    let out = ernstlab(&["lie-table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("2 X4"));

    let out = ernstlab(&["lie-table", "--json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 25);
    let find = |l: &str, r: &str| {
        entries
            .iter()
            .find(|e| e["left"] == l && e["right"] == r)
            .unwrap()
    };
    assert_eq!(find("X1", "X2")["bracket"], "X1");
    assert_eq!(find("X3", "X5")["bracket"], "2 X4");
    for e in entries {
        let opposite = find(e["right"].as_str().unwrap(), e["left"].as_str().unwrap());
        for (a, b) in e["coefficients"]
            .as_array()
            .unwrap()
            .iter()
            .zip(opposite["coefficients"].as_array().unwrap())
        {
            let (a, b) = (a.as_str().unwrap(), b.as_str().unwrap());
            assert!(
                a == "0" && b == "0" || a == format!("-{b}") || b == format!("-{a}"),
                "{a} vs {b}"
            );
        }
    }
}

#[test]
fn reduce_check_passes_and_is_deterministic() {
    let a = ernstlab(&["reduce-check", "--seed", "1", "--trials", "50"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = ernstlab(&["reduce-check", "--seed", "1", "--trials", "50"]);
    assert_eq!(a.stdout, b.stdout);
    let report: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn reduce_check_rejects_zero_trials() {
    let out = ernstlab(&["reduce-check", "--seed", "1", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(2));
}
