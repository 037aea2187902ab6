//! End-to-end runs of the binary: every subcommand, the file formats it
//! reads and writes, and the exit-code contract.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_socialpower"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write_single_attack_spec(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("spec.json");
    fs::write(
        &path,
        r#"{
            "kind": "SingleAttack", "n": 8, "m": null,
            "center_row": [0.15, 0.15, 0.2, 0.05, 0.15, 0.3],
            "center_row_2": null, "beta1": 0.69, "beta2": null
        }"#,
    )
    .unwrap();
    path
}

fn write_sweep_config(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("sweep.json");
    fs::write(
        &path,
        r#"{
            "spec": {
                "kind": "SingleAttack", "n": 8, "m": null,
                "center_row": [0.15, 0.15, 0.2, 0.05, 0.15, 0.3],
                "center_row_2": null, "beta1": 0.5, "beta2": null
            },
            "swept_parameter": "beta1",
            "grid": {"start": 0.05, "stop": 0.95, "step": 0.05},
            "equilibrium_method": "closed_form_gamma"
        }"#,
    )
    .unwrap();
    path
}

#[test]
fn validate_reports_and_sets_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("good.csv"),
        "0,1,0\n0,0,1\n1,0,0\n",
    )
    .unwrap();
    let out = run_in(dir.path(), &["validate", "good.csv"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"irreducible\": true"));

    fs::write(
        dir.path().join("bad.csv"),
        "0,0.9,0\n0,0,1\n1,0,0\n",
    )
    .unwrap();
    let out = run_in(dir.path(), &["validate", "bad.csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("\"row_stochastic\": false"));
}

#[test]
fn build_threshold_and_gamma_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_single_attack_spec(dir.path());

    let out = run_in(
        dir.path(),
        &["build", spec.to_str().unwrap(), "--out", "matrix.json"],
    );
    assert!(out.status.success());

    let out = run_in(dir.path(), &["validate", "matrix.json"]);
    assert!(out.status.success());

    let out = run_in(dir.path(), &["gamma", "matrix.json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"leader\": [\n    1\n  ]"), "{text}");

    let out = run_in(dir.path(), &["threshold", spec.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"Thm2.ii\""));
    assert!(text.contains("\"critical\": 0.7"));
    assert!(text.contains("\"predicted_leader\": [\n    1\n  ]"), "{text}");
}

#[test]
fn simulate_writes_trajectories_and_flags_convergence() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("ring.csv"), "0,1,0\n0,0,1\n1,0,0\n").unwrap();
    let out = run_in(
        dir.path(),
        &[
            "simulate",
            "ring.csv",
            "--x0",
            "uniform",
            "--trajectory",
            "traj.csv",
        ],
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"converged\": true"));
    let traj = fs::read_to_string(dir.path().join("traj.csv")).unwrap();
    assert!(traj.starts_with("s,x_1,x_2,x_3"));

    // a custom interior start
    fs::write(dir.path().join("x0.json"), "[0.2, 0.3, 0.5]").unwrap();
    let out = run_in(dir.path(), &["simulate", "ring.csv", "--x0", "x0.json"]);
    assert!(out.status.success());

    // an impossible issue budget trips the convergence exit code
    let out = run_in(
        dir.path(),
        &["simulate", "ring.csv", "--x0", "x0.json", "--max-issues", "1"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_and_crossover_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_sweep_config(dir.path());

    let out = run_in(
        dir.path(),
        &["sweep", config.to_str().unwrap(), "--out", "sweep.csv"],
    );
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    assert!(csv.starts_with("beta,gamma_1,"));
    assert_eq!(csv.lines().count(), 20); // header + 19 grid points

    let out = run_in(
        dir.path(),
        &["crossover", config.to_str().unwrap(), "--nodes", "1,7"],
    );
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let crossing = parsed["crossover"].as_f64().unwrap();
    assert!((crossing - 0.7).abs() <= 1e-8, "{crossing}");

    let out = run_in(
        dir.path(),
        &["crossover", config.to_str().unwrap(), "--nodes", "1,2"],
    );
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"crossover\": null"));
}

#[test]
fn verify_prints_a_clean_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["verify", "dissenting-subjects", "--samples", "20", "--seed", "3"],
    );
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\"verdict_failures\": 0"), "{text}");
    assert!(text.contains("\"ordering_failures\": 0"), "{text}");
}

#[test]
fn paper_experiments_emit_the_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["paper-experiments", "--out", "results"]);
    assert!(out.status.success());
    let listed = stdout(&out);
    for name in ["fig7.csv", "fig7.json", "fig8.csv", "fig9.csv"] {
        assert!(listed.contains(name), "{listed}");
        assert!(dir.path().join("results").join(name).exists());
    }
}

#[test]
fn bad_inputs_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["validate", "missing.json"]);
    assert_eq!(out.status.code(), Some(1));

    fs::write(dir.path().join("tiny.csv"), "0,1\n1,0\n").unwrap();
    let out = run_in(dir.path(), &["validate", "tiny.csv"]);
    assert_eq!(out.status.code(), Some(1));

    fs::write(dir.path().join("spec.json"), r#"{"kind": "SingleAttack"}"#).unwrap();
    let out = run_in(dir.path(), &["threshold", "spec.json"]);
    assert_eq!(out.status.code(), Some(1));
}
