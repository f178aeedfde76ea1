//! End-to-end checks of the command-line surface through the built binary.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_elliptic-hermite"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn eval_squeezed_reference_value() {
    let out = run(&[
        "eval", "--family", "squeezed", "-m", "1", "-n", "1", "--tau", "0.6", "--z", "1+0i",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["family"], "squeezed");
    assert_eq!(v["m"], 1);
    assert_eq!(v["tau"], 0.6);
    assert!((v["value"]["re"].as_f64().unwrap() - 0.3).abs() <= 1e-12);
    assert!(v["value"]["im"].as_f64().unwrap().abs() <= 1e-15);
}

#[test]
fn eval_rejects_bad_tau_with_named_error() {
    let out = run(&[
        "eval", "--family", "squeezed", "-m", "1", "-n", "1", "--tau", "1.2", "--z", "1+0i",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("TauOutOfRange"), "stderr was: {err}");
}

#[test]
fn unknown_flags_are_rejected() {
    let out = run(&["eval", "--family", "squeezed", "--frobnicate", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_complex_token_is_named() {
    let out = run(&["eval", "--family", "squeezed", "--z", "1+2j"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1+2j"), "stderr was: {err}");
}

#[test]
fn verify_quadrature_suite_passes_and_reports() {
    let out = run(&[
        "verify",
        "--suite",
        "quadrature",
        "--quad",
        "32",
        "--no-timestamp",
    ]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["schema_version"], "1.0.0");
    assert_eq!(report["pass"], true);
    assert!(report.get("timestamp").is_none());
    let checks = report["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["check"] == "quadrature.moment_oracle"));
    for c in checks {
        assert_eq!(c["pass"], true, "{}", c["check"]);
    }
}

#[test]
fn verify_runs_are_byte_identical_without_timestamp() {
    let args = [
        "verify",
        "--suite",
        "poly",
        "--seed",
        "11",
        "--no-timestamp",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn kernel_csv_is_deterministic_and_well_formed() {
    let args = [
        "kernel", "--tau", "0.4", "-n", "1", "--trials", "4", "--seed", "9",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&a);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "z_re,z_im,w_re,w_im,closed_re,closed_im,series_re,series_im,ratio_re,ratio_im"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let cells: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cells.len(), 10);
        // closed/series ratio is the measured calibration constant (≈ 1)
        assert!((cells[8] - 1.0).abs() <= 1e-8, "ratio re {}", cells[8]);
        assert!(cells[9].abs() <= 1e-8, "ratio im {}", cells[9]);
    }
}

#[test]
fn sample_summary_and_csv() {
    let dir = std::env::temp_dir().join(format!("eh-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv_path = dir.join("spectra.csv");
    let out = run(&[
        "sample",
        "--size",
        "24",
        "--tau",
        "0.5",
        "--seed",
        "5",
        "--trials",
        "2",
        "--no-timestamp",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["schema_version"], "1.0.0");
    assert_eq!(summary["rng"], "chacha12/box-muller");
    assert_eq!(summary["per_seed"].as_array().unwrap().len(), 2);
    assert!(summary["pooled"]["ellipse_fraction"].as_f64().unwrap() > 0.0);
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = csv.trim().lines().collect();
    assert_eq!(lines[0], "seed,index,lambda_re,lambda_im");
    assert_eq!(lines.len(), 1 + 2 * 24);
    // determinism: rerunning reproduces the file byte for byte
    let out2 = run(&[
        "sample",
        "--size",
        "24",
        "--tau",
        "0.5",
        "--seed",
        "5",
        "--trials",
        "2",
        "--no-timestamp",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out2.status.success());
    assert_eq!(stdout(&out), stdout(&out2));
    assert_eq!(csv, std::fs::read_to_string(&csv_path).unwrap());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn grid_csv_has_expected_shape() {
    let out = run(&["grid", "--quad", "4", "--tau", "0.3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines[0], "x,y,weight");
    assert_eq!(lines.len(), 1 + 16);
    // total mass is √(1-τ²)
    let mass: f64 = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(2).unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((mass - (1.0f64 - 0.09).sqrt()).abs() <= 1e-12);
}

#[test]
fn verify_acceptance_subset_reports_stable_ids() {
    // run the cheap acceptance criteria end to end through the CLI
    let out = run(&["verify", "--suite", "acceptance", "--no-timestamp"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["pass"], true);
    assert!(out.status.success());
    let ids: Vec<String> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["check"].as_str().unwrap().to_string())
        .collect();
    for needle in [
        "acceptance.c1.closed_vs_ladder",
        "acceptance.c2.elliptic_eigencheck",
        "acceptance.c3.gram_level_invariance",
        "acceptance.c4.substitution_nonorthogonal",
        "acceptance.c5.squeezed_genfun",
        "acceptance.c6.tpcs_identity",
        "acceptance.c7.rodrigues_equivalence",
        "acceptance.c8.ellipse_support",
        "acceptance.c9.moment_oracle",
    ] {
        assert!(
            ids.iter().any(|id| id == needle),
            "missing check id {needle}"
        );
    }
}
