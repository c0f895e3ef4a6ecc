//! End-to-end tests of the binary surface: every subcommand, both formats,
//! exit-code contracts and output-file round trips.

use std::process::{Command, Output};

fn szwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_szwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn chars_table_shape_and_trivial_row() {
    let out = szwalk(&["chars", "--n", "4", "--format", "csv", "--verify"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 6); // header + 5 partitions of 4
    assert_eq!(lines[0].matches(',').count(), 5);
    // first row is the trivial representation: all ones
    assert_eq!(lines[1], "4,1,1,1,1,1");
    // sign row last: values ±1
    assert!(lines[5].starts_with("1+1+1+1,"));
}

#[test]
fn chars_rejects_oversized_n() {
    let out = szwalk(&["chars", "--n", "31"]);
    assert!(!out.status.success());
}

#[test]
fn spectrum_n5_values() {
    let out = szwalk(&["spectrum", "--n", "5", "--format", "csv", "--dense-check"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 8); // header + 7 partitions of 5
    let mut mult_total = 0u64;
    let mut distinct = std::collections::BTreeSet::new();
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        distinct.insert(fields[1].to_string());
        mult_total += fields[3].parse::<u64>().unwrap();
    }
    assert_eq!(mult_total, 120);
    assert_eq!(distinct.len(), 7);
    // exact rational strings, e.g. the hook value −3/5 at n = 6
    let out6 = szwalk(&["spectrum", "--n", "6"]);
    assert!(stdout(&out6).contains("-3/5"));
}

#[test]
fn overlap_both_reconciles_and_tolerance_gates_exit() {
    let out = szwalk(&[
        "overlap", "--n", "4", "--t-max", "50", "--mode", "both", "--format", "json",
    ]);
    assert!(out.status.success());
    let rows: Vec<szwalk::report::OverlapRow> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.len(), 51);
    for r in &rows {
        assert!(r.abs_diff.unwrap() <= 1e-9);
        assert_eq!(r.classical_uniform, 0.25);
    }
    // JSON round-trips exactly
    let again = serde_json::to_string_pretty(&rows).unwrap();
    let back: Vec<szwalk::report::OverlapRow> = serde_json::from_str(&again).unwrap();
    assert_eq!(back, rows);
    // an unattainable tolerance must flip the exit code
    let out = szwalk(&[
        "overlap", "--n", "5", "--t-max", "30", "--mode", "both", "--tol", "0",
    ]);
    assert!(!out.status.success());
}

#[test]
fn overlap_analytic_only_runs_without_simulation_guard() {
    let out = szwalk(&[
        "overlap", "--n", "10", "--t-max", "5", "--mode", "analytic", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.trim().lines().count(), 7);
    // simulated column empty
    let second = text.trim().lines().nth(1).unwrap();
    let fields: Vec<&str> = second.split(',').collect();
    assert!(!fields[2].is_empty());
    assert!(fields[3].is_empty());
}

#[test]
fn mixing_rows_sum_to_one_and_runs_are_deterministic() {
    let a = szwalk(&["mixing", "--n", "4", "--T", "120"]);
    assert!(a.status.success());
    let b = szwalk(&["mixing", "--n", "4", "--T", "120"]);
    assert_eq!(stdout(&a), stdout(&b));
    let mut total = 0.0f64;
    for line in stdout(&a).trim().lines().skip(1) {
        total += line.split(',').nth(2).unwrap().parse::<f64>().unwrap();
    }
    assert!((total - 1.0).abs() < 1e-10);
    // a mixing-matrix row from an arbitrary start vertex
    let row = szwalk(&["mixing", "--n", "4", "--T", "60", "--row", "1 0 2 3"]);
    assert!(row.status.success());
}

#[test]
fn basis_prob_starts_at_zero_for_full_cycle() {
    let out = szwalk(&["basis-prob", "--n", "4", "--t-max", "6", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let first = text.trim().lines().nth(1).unwrap();
    assert_eq!(first.split(',').next().unwrap(), "0");
    let p0: f64 = first.split(',').nth(1).unwrap().parse().unwrap();
    assert_eq!(p0, 0.0);
}

#[test]
fn verify_default_profile_passes() {
    let out = szwalk(&["verify"]);
    assert!(out.status.success());
    let report: szwalk::report::VerifyReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(report.all_pass);
    assert_eq!(report.checks.len(), 10);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = szwalk(&["chars", "--n", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.trim().lines().count(), 4);
}

#[test]
fn simulation_guard_rejects_big_n() {
    let out = szwalk(&["overlap", "--n", "9", "--t-max", "3", "--mode", "simulated"]);
    assert!(!out.status.success());
}

#[test]
fn env_var_overrides_simulation_guard() {
    let out = Command::new(env!("CARGO_BIN_EXE_szwalk"))
        .args(["overlap", "--n", "7", "--t-max", "1", "--mode", "simulated"])
        .env("SZW_MAX_N", "6")
        .output()
        .expect("binary runs");
    assert!(!out.status.success(), "guard lowered to 6 must reject n=7");
    let out = Command::new(env!("CARGO_BIN_EXE_szwalk"))
        .args(["mixing", "--n", "6", "--T", "2"])
        .env("SZW_MAX_N", "6")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
}

#[test]
fn threads_flag_is_accepted() {
    let out = szwalk(&[
        "--threads",
        "1",
        "overlap",
        "--n",
        "4",
        "--t-max",
        "5",
        "--mode",
        "both",
    ]);
    assert!(out.status.success());
}
