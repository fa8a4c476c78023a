use std::collections::BTreeSet;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_purify");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "purify {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn curve_header_and_endpoint_rows() {
    let text = stdout(&["curve", "--f-min", "0.25", "--f-max", "1.0", "--step", "0.05"]);
    assert_eq!(
        text.lines().next().unwrap(),
        "F,yield_hashing,best_k,yield_recurrence,best_m,yield_ms,yield_ls,yield_combined"
    );
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 16);

    let first = &rows[0];
    assert_eq!(num(&first[0]), 0.25);
    for col in [1, 3, 5, 6, 7] {
        assert_eq!(num(&first[col]), 0.0, "column {col}");
    }

    let last = rows.last().unwrap();
    assert_eq!(num(&last[0]), 1.0);
    assert_eq!(num(&last[1]), 1.0);
    assert_eq!(num(&last[6]), 0.5);
    let m: f64 = num(&last[4]);
    assert!((num(&last[5]) - (m - 1.0) / m).abs() < 1e-11);
}

#[test]
fn curve_four_pair_protocol_wins_at_point_eight() {
    let text = stdout(&["curve", "--f-min", "0.8", "--f-max", "0.81", "--step", "0.01"]);
    let row = &csv_rows(&text)[0];
    assert_eq!(num(&row[0]), 0.8);
    let ls = num(&row[6]);
    assert!((ls - 0.119576).abs() < 1e-6);
    for col in [1, 3, 5] {
        assert!(ls > num(&row[col]), "column {col}");
    }
}

#[test]
fn curve_single_distribution_and_subsets() {
    let text = stdout(&["curve", "--dist", "0.7,0.1,0.1,0.1", "--protocols", "ls,hashing"]);
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "0.7");
    assert!(rows[0][2].is_empty() && rows[0][3].is_empty() && rows[0][5].is_empty());
    assert!(!rows[0][6].is_empty());
}

#[test]
fn curve_json_document() {
    let text = stdout(&["curve", "--f-min", "0.9", "--f-max", "1", "--step", "0.05", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["config"]["k_max"], 64);
    let points = doc["points"].as_array().unwrap();
    assert_eq!(points.len(), 3);
    assert_eq!(points[2]["F"], 1.0);
    assert_eq!(points[2]["yield_ls"], 0.5);
    let keys: BTreeSet<&str> = points[0].as_object().unwrap().keys().map(String::as_str).collect();
    let header: BTreeSet<&str> =
        "F,yield_hashing,best_k,yield_recurrence,best_m,yield_ms,yield_ls,yield_combined".split(',').collect();
    assert_eq!(keys, header);
}

#[test]
fn curve_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let out = run(&["curve", "--f-min", "0.5", "--f-max", "0.6", "--step", "0.05", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["curve", "--f-min", "0.9", "--f-max", "0.5"],
        vec!["curve", "--step", "0"],
        vec!["curve", "--f-max", "1.5"],
        vec!["curve", "--protocols", "twirl"],
        vec!["curve", "--dist", "0.5,0.5"],
        vec!["curve", "--dist", "0.5,0.6,0,0"],
        vec!["curve", "--m-max", "1"],
        vec!["crossover", "--f-min", "0.7", "--f-max", "0.6"],
        vec!["verify", "everything"],
        vec!["verify"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "purify {args:?}");
    }
}

#[test]
fn verify_reports() {
    assert!(stdout(&["verify", "table"]).contains("64/64 rows match"));
    assert!(stdout(&["verify", "werner-closed-form"]).contains("coefficient vector (1, 18, 24, 21) confirmed"));
    assert!(stdout(&["verify", "recurrence"]).contains("1000/1000 random inputs within 1e-12"));
    let all = stdout(&["verify", "all"]);
    assert!(!all.contains("[FAIL]"));
    assert!(all.lines().count() >= 5);
}

#[test]
fn crossover_has_no_interval_near_the_ends() {
    for (lo, hi) in [("0.95", "1.0"), ("0.25", "0.5")] {
        let text = stdout(&["crossover", "--f-min", lo, "--f-max", hi, "--step", "0.005"]);
        assert!(text.contains("no interval"), "{text}");
    }
    let text = stdout(&["crossover", "--f-min", "0.5", "--f-max", "1.0", "--step", "0.01", "--protocols", "recurrence,ms,ls"]);
    assert!(text.contains("no interval"), "{text}");
}

#[test]
fn crossover_json_reports_interval_and_configs() {
    let text = stdout(&["crossover", "--f-min", "0.7", "--f-max", "0.9", "--step", "0.01", "--format", "json", "--points"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    let intervals = doc["intervals"].as_array().unwrap();
    assert_eq!(intervals.len(), 1);
    let start = intervals[0]["start"]["fidelity"].as_f64().unwrap();
    let end = intervals[0]["end"]["fidelity"].as_f64().unwrap();
    assert!((start - 0.747).abs() <= 0.001, "{start}");
    assert!((end - 0.847).abs() <= 0.001, "{end}");
    let comps = intervals[0]["start"]["competitors"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    assert!(comps.iter().all(|c| c["config"].is_u64()));
    assert_eq!(doc["points"].as_array().unwrap().len(), 21);
}

#[test]
fn table_matches_reference_rows() {
    let text = stdout(&["table"]);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("monomial,input,f_image,marginal"));
    let generated: BTreeSet<&str> = lines.collect();
    let reference_text = include_str!("../../core/data/pass_table.csv");
    let reference: BTreeSet<&str> = reference_text.lines().skip(1).collect();
    assert_eq!(generated.len(), 64);
    assert_eq!(generated, reference);
    // grouped by marginal in ascending order
    let marginals: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    let mut sorted = marginals.clone();
    sorted.sort();
    assert_eq!(marginals, sorted);
}
