//! End-to-end checks of the `condsteer` binary: output formats, exit codes
//! and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_condsteer"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("condsteer-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn analyze_reports_steerable_noisy_ghz() {
    let out = run(&["analyze", "--family", "noisy-ghz", "--param", "p=0.6"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["conditionally_steerable"], true);
    assert!(doc["witness_count"].as_u64().unwrap() > 0);
    assert!(doc["negativity"]["1|23"].as_f64().unwrap() > 0.49);
    assert_eq!(doc["ghz_distillable"], true);
}

#[test]
fn analyze_of_maximally_mixed_ghz_symmetric_flags_nothing() {
    let out = run(&[
        "analyze",
        "--family",
        "ghz-symmetric",
        "--param",
        "p=0",
        "--param",
        "q=0",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["conditionally_steerable"], false);
    assert_eq!(doc["ghz_distillable"], false);
    for cut in ["1|23", "2|13", "3|12"] {
        assert!(doc["negativity"][cut].as_f64().unwrap().abs() < 1e-10);
    }
    let gs = &doc["ghz_symmetric"];
    assert_eq!(gs["mermin_violated"], false);
    assert_eq!(gs["facet15_violated"], false);
    assert_eq!(gs["genuine_steering"], false);
}

#[test]
fn analyze_rejects_bad_amplitudes_with_exit_one() {
    let out = run(&[
        "analyze",
        "--family",
        "psi",
        "--param",
        "lambda1=2",
        "--param",
        "lambda2=0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("unnormalizable"), "stderr: {stderr}");
}

#[test]
fn analyze_reads_state_files() {
    let path = tmp_path("ghz.json");
    let state = condsteer::states::ghz_plus();
    let file = condsteer_cli::statefile::StateFile::from_state(&state);
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();

    let out = run(&["analyze", "--state-file", path.to_str().unwrap()]);
    let doc = stdout_json(&out);
    assert_eq!(doc["conditionally_steerable"], true);
    assert!((doc["negativity"]["2|13"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    std::fs::remove_file(&path).ok();
}

#[test]
fn analyze_rejects_unphysical_state_files() {
    let path = tmp_path("bad.json");
    let mut file = condsteer_cli::statefile::StateFile::from_state(&condsteer::states::ghz_plus());
    file.re[0][0] = 2.0; // trace now 2.5
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();

    let out = run(&["analyze", "--state-file", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("trace"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn threshold_finds_linear_criterion_boundary() {
    let out = run(&[
        "threshold",
        "--family",
        "noisy-ghz",
        "--param",
        "theta=1.5707963267948966",
        "--bisect",
        "p=0:1",
        "--predicate",
        "s1-detects",
    ]);
    let doc = stdout_json(&out);
    assert!((doc["threshold"].as_f64().unwrap() - 0.5).abs() < 1e-3);
    assert_eq!(doc["predicate_true"], "above");
}

#[test]
fn threshold_rejects_agreeing_endpoints_with_exit_two() {
    let out = run(&[
        "threshold",
        "--family",
        "noisy-ghz",
        "--param",
        "theta=1.5707963267948966",
        "--bisect",
        "p=0.6:0.9",
        "--predicate",
        "s1-detects",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("endpoints agree"));
}

#[test]
fn threshold_rejects_non_monotone_predicates_with_exit_two() {
    // at p = 0.26 the linear criterion fires on two disjoint q windows
    let out = run(&[
        "threshold",
        "--family",
        "ghz-symmetric",
        "--param",
        "p=0.26",
        "--bisect",
        "q=0.156:0.433",
        "--predicate",
        "s1-detects",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not monotone"));
}

#[test]
fn sweep_outputs_are_byte_identical_across_runs() {
    let (p1, p2) = (tmp_path("sweep1.csv"), tmp_path("sweep2.csv"));
    for path in [&p1, &p2] {
        let out = run(&[
            "sweep",
            "--family",
            "biseparable",
            "--sweep",
            "p=0:1:0.05",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let (a, b) = (std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    assert_eq!(a, b);

    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "p,prob,s1,s2,horodecki_m,s1_detects,s2_detects,cs_detected,chsh_nonlocal,s2_clamped"
    );
    for line in lines {
        let s1_field = line.split(',').nth(2).unwrap();
        assert!(s1_field.contains('e'), "12-significant-digit form: {line}");
        let flag = line.split(',').nth(5).unwrap();
        assert!(flag == "0" || flag == "1");
    }
    std::fs::remove_file(&p1).ok();
    std::fs::remove_file(&p2).ok();
}

#[test]
fn ghz_symmetric_sweep_carries_nonlocality_columns() {
    let path = tmp_path("region.csv");
    let out = run(&[
        "sweep",
        "--family",
        "ghz-symmetric",
        "--sweep",
        "p=0.2:0.3:0.05",
        "--sweep",
        "q=0.25:0.35:0.05",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.starts_with("p,q,"));
    assert!(header.ends_with("l1,l2,mermin_violated,facet15_violated,genuine_steering"));
    assert!(text.lines().count() > 1);
    std::fs::remove_file(&path).ok();
}

#[test]
fn unknown_flag_exits_one() {
    let out = run(&["analyze", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unobtainable_fixed_outcome_exits_two() {
    // at nu = 0 the damped state is |000><000| and the a_1 outcome of the
    // fixed setting never occurs
    let out = run(&[
        "analyze",
        "--family",
        "psi-damped",
        "--param",
        "lambda1=0.3",
        "--param",
        "lambda2=0.4",
        "--param",
        "nu=0",
        "--mode",
        "fixed",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("zero probability"));
}
