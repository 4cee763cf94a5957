//! End-to-end checks of the command-line front end: flags, file formats,
//! exit codes and the documented example runs.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use netprop::cli::{cmd_sweep, Cli, Command as Sub};
use netprop_core::exact::hub_time;
use clap::Parser;

fn netprop(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_netprop"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn csv_field(csv: &str, row: usize, column: &str) -> String {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let index = header.iter().position(|h| *h == column).unwrap();
    lines.nth(row).unwrap().split(',').nth(index).unwrap().to_string()
}

#[test]
fn generate_chain_writes_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let out = netprop(dir.path(), &["generate", "--family", "chain", "--n", "5", "--out", "g.txt"]);
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("g.txt")).unwrap();
    assert!(text.starts_with("5 4"), "{text}");
}

#[test]
fn generate_geometric_is_deterministic_and_writes_layout() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["generate", "--family", "geometric", "--n", "100", "--r", "0.2", "--seed", "7"];
    assert!(netprop(dir.path(), &args).status.success());
    let graph = fs::read(dir.path().join("graph.txt")).unwrap();
    let layout = fs::read(dir.path().join("graph.txt.layout")).unwrap();
    assert!(netprop(dir.path(), &args).status.success());
    assert_eq!(graph, fs::read(dir.path().join("graph.txt")).unwrap());
    assert_eq!(layout, fs::read(dir.path().join("graph.txt.layout")).unwrap());
}

#[test]
fn exit_codes_distinguish_error_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let bad_lambda = netprop(dir.path(), &["generate", "--family", "power_law", "--n", "50", "--lambda", "1.5"]);
    assert_eq!(bad_lambda.status.code(), Some(2));
    assert!(!bad_lambda.stderr.is_empty());

    let disconnected = netprop(dir.path(), &["analyze", "--family", "erdos_renyi", "--n", "40", "--edge-prob", "0.01"]);
    assert_eq!(disconnected.status.code(), Some(3));

    let too_big = netprop(dir.path(), &["exact", "--family", "chain", "--n", "25"]);
    assert_eq!(too_big.status.code(), Some(4));

    let with_giant = netprop(
        dir.path(),
        &["analyze", "--family", "erdos_renyi", "--n", "200", "--edge-prob", "0.01", "--giant", "--reps", "20", "--src", "0"],
    );
    // Node 0 may or may not sit in the giant component; either way the
    // connectivity error is gone.
    assert_ne!(with_giant.status.code(), Some(3));
}

#[test]
fn analyze_chain_row() {
    let dir = tempfile::tempdir().unwrap();
    let out = netprop(dir.path(), &["analyze", "--family", "chain", "--n", "5", "--p", "0.5", "--reps", "200"]);
    assert!(out.status.success());
    let csv = stdout(&out);
    assert_eq!(
        csv.lines().next().unwrap(),
        "family,n,p,seed,exact,mc_mean,mc_stderr,lower,d,b,tau,upper,diameter,eccentricity,runtime_ms"
    );
    let exact: f64 = csv_field(&csv, 0, "exact").parse().unwrap();
    assert!((exact - 8.0).abs() <= 1e-9 * 8.0, "{exact}");
    assert_eq!(csv_field(&csv, 0, "lower").parse::<f64>().unwrap(), 8.0);
}

#[test]
fn analyze_hub_exact_matches_recurrence() {
    let dir = tempfile::tempdir().unwrap();
    let out = netprop(dir.path(), &["analyze", "--family", "hub", "--n", "8", "--p", "0.5", "--reps", "100"]);
    let exact: f64 = csv_field(&stdout(&out), 0, "exact").parse().unwrap();
    let reference = hub_time(8, 0.5).unwrap();
    assert!((exact - reference).abs() <= 1e-9 * reference);
}

#[test]
fn analyze_large_complete_graph_has_empty_exact_field() {
    let dir = tempfile::tempdir().unwrap();
    let out = netprop(
        dir.path(),
        &["analyze", "--family", "complete", "--n", "1000", "--p", "0.5", "--reps", "1000"],
    );
    assert!(out.status.success());
    let csv = stdout(&out);
    assert_eq!(csv_field(&csv, 0, "exact"), "");
    let mean: f64 = csv_field(&csv, 0, "mc_mean").parse().unwrap();
    assert!((2.0..=2.5).contains(&mean), "{mean}");
}

#[test]
fn json_fields_match_csv_headers() {
    let dir = tempfile::tempdir().unwrap();
    let out = netprop(
        dir.path(),
        &["analyze", "--family", "ring", "--n", "10", "--reps", "50", "--format", "json"],
    );
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
    let mut expected = netprop::record::COLUMNS.to_vec();
    let mut keys_sorted = keys.clone();
    expected.sort_unstable();
    keys_sorted.sort_unstable();
    assert_eq!(keys_sorted, expected);
}

#[test]
fn sweep_p_halves_chain_exact_value() {
    let dir = tempfile::tempdir().unwrap();
    let out = netprop(
        dir.path(),
        &["sweep", "--family", "chain", "--n", "9", "--sweep", "p", "--values", "0.25,0.5", "--reps", "50"],
    );
    let csv = stdout(&out);
    for (row, want) in [(0, 32.0), (1, 16.0)] {
        let exact: f64 = csv_field(&csv, row, "exact").parse().unwrap();
        assert!((exact - want).abs() <= 1e-9 * want, "{exact}");
    }
}

#[test]
fn sweep_output_is_deterministic_apart_from_runtime() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "sweep", "--family", "lattice2d_shortcuts", "--side", "12", "--sweep", "shortcuts", "--values", "0,16",
        "--reps", "100", "--seed", "3",
    ];
    let strip = |csv: String| -> Vec<String> {
        csv.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect()
    };
    let a = strip(stdout(&netprop(dir.path(), &args)));
    let b = strip(stdout(&netprop(dir.path(), &args)));
    assert_eq!(a, b);
    assert_eq!(a.len(), 3);
}

#[test]
fn sweep_lattice_shortcuts_reduce_time() {
    let cli = Cli::parse_from([
        "netprop", "sweep", "--family", "lattice2d_shortcuts", "--side", "32", "--sweep", "shortcuts",
        "--values", "0,32", "--reps", "300",
    ]);
    let Sub::Sweep(args) = cli.command else { panic!() };
    let records = cmd_sweep(&args).unwrap();
    assert!(records[1].mc_mean < records[0].mc_mean);
}

#[test]
fn sweep_lattice_side_grows_roughly_linearly() {
    let cli = Cli::parse_from([
        "netprop", "sweep", "--family", "lattice2d", "--side", "4", "--sweep", "n", "--values", "4,16,64",
        "--reps", "100",
    ]);
    let Sub::Sweep(args) = cli.command else { panic!() };
    let records = cmd_sweep(&args).unwrap();
    let ratio_small = records[1].mc_mean / records[0].mc_mean;
    let ratio_large = records[2].mc_mean / records[1].mc_mean;
    // Side grows 4x per step; time should follow within a generous band.
    for ratio in [ratio_small, ratio_large] {
        assert!((2.5..=5.0).contains(&ratio), "{ratio}");
    }
}

#[test]
fn exact_exports_table_and_survival() {
    let dir = tempfile::tempdir().unwrap();
    let out = netprop(
        dir.path(),
        &["exact", "--family", "ring", "--n", "6", "--table", "t.csv", "--survival", "s.csv", "--tmax", "20"],
    );
    assert!(out.status.success());
    let expected: f64 = stdout(&out).trim().parse().unwrap();
    assert!(expected > 0.0);
    let table = fs::read_to_string(dir.path().join("t.csv")).unwrap();
    assert!(table.starts_with("state_mask,expected_steps\n"));
    let survival = fs::read_to_string(dir.path().join("s.csv")).unwrap();
    assert!(survival.starts_with("t,tail\n"));
    assert_eq!(survival.lines().count(), 22);
}

#[test]
fn trace_ends_with_all_nodes_infected() {
    let dir = tempfile::tempdir().unwrap();
    let out = netprop(dir.path(), &["trace", "--family", "binary_tree", "--d", "3", "--replicate", "4"]);
    assert!(out.status.success());
    let last = stdout(&out).lines().last().unwrap().to_string();
    assert_eq!(last.split_whitespace().nth(1), Some("15"));
}

#[test]
fn tiling_reports_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = netprop(dir.path(), &["tiling", "--n", "400", "--r", "0.3", "--reps", "50", "--seed", "1"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["tiles_per_side"], 5);
    assert!(value["time_constant"].as_f64().unwrap() > 0.0);
}
