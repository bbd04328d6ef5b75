//! End-to-end tests of the `jaffine` binary: exit codes, report JSON on
//! stdout, cache behavior, and the file-output flag.

use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_jaffine"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn stripped(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

/// The two-variable grid over GF(16) with the second variable nonzero,
/// cut to the prime field; yields a [[20, 4, 4]] code cheap enough to
/// certify exhaustively.
fn subfield_config() -> Value {
    serde_json::json!({
        "construction": "euclid-subfield",
        "p": 2,
        "field_degree": 4,
        "subfield_degree": 1,
        "N": [4, 6],
        "J": [2],
        "deltas": [[[0, 1], [0, 2], [0, 3], [0, 4], [1, 2], [2, 4], [1, 3], [2, 1]]],
        "distance": { "method": "exhaustive", "budget_seconds": 2.0 }
    })
}

fn write_config(dir: &Path, value: &Value) -> String {
    let path = dir.join("config.json");
    std::fs::write(&path, serde_json::to_vec_pretty(value).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn construct_emits_the_expected_report() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), &subfield_config());
    let out = run_in(tmp.path(), &["construct", &cfg, "--no-cache"]);
    let rep = stdout_json(&out);
    assert_eq!(rep["command"], "construct");
    let stab = &rep["stabilizer"][0];
    assert_eq!((stab["n"].as_u64(), stab["k"].as_i64()), (Some(20), Some(4)));
    assert_eq!(stab["construction"], "css");
    let bound = &stab["distance_bound"];
    assert_eq!(bound["lower"], 4);
    assert_eq!(bound["exact"], true);
    assert_eq!(rep["checks"]["self_orthogonal"], true);
}

#[test]
fn failed_precondition_exits_2() {
    let tmp = TempDir::new().unwrap();
    let mut cfg = subfield_config();
    cfg["construction"] = "euclid-full".into();
    cfg["subfield_degree"] = 4.into();
    cfg["deltas"] = serde_json::json!([[[3, 0]]]);
    let path = write_config(tmp.path(), &cfg);
    let out = run_in(tmp.path(), &["construct", &path, "--no-cache"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("self-orthogonality condition failed"), "{err}");
}

#[test]
fn validation_problems_exit_1() {
    let tmp = TempDir::new().unwrap();

    // Grid size breaking the divisibility requirement, named per coordinate.
    let mut cfg = subfield_config();
    cfg["N"] = serde_json::json!([5, 6]);
    let path = write_config(tmp.path(), &cfg);
    let out = run_in(tmp.path(), &["construct", &path, "--no-cache"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("N_1"));

    // Unknown field in the JSON.
    let mut cfg = subfield_config();
    cfg["surprise"] = 1.into();
    let path = write_config(tmp.path(), &cfg);
    let out = run_in(tmp.path(), &["construct", &path, "--no-cache"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("surprise"));

    // Missing input file.
    let out = run_in(tmp.path(), &["construct", "no-such-file.json", "--no-cache"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cached_and_uncached_reports_agree() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), &subfield_config());
    let cache = tmp.path().join("cache");
    let cache_args = ["--cache-dir", cache.to_str().unwrap()];

    let cold = stripped(stdout_json(&run_in(tmp.path(), &["construct", &cfg, cache_args[0], cache_args[1]])));
    assert!(cache.read_dir().unwrap().next().is_some(), "cache dir stays empty");
    let warm = stripped(stdout_json(&run_in(tmp.path(), &["construct", &cfg, cache_args[0], cache_args[1]])));
    let none = stripped(stdout_json(&run_in(tmp.path(), &["construct", &cfg, "--no-cache"])));

    assert_eq!(cold, warm);
    assert_eq!(cold, none);
    assert!(!cold["cache_keys"].as_array().unwrap().is_empty());
}

#[test]
fn reproduce_reports_discrepancies_but_exits_0() {
    let tmp = TempDir::new().unwrap();
    let out = run_in(
        tmp.path(),
        &["reproduce", "--table", "3", "--rows", "3,4", "--budget", "0.05", "--no-cache"],
    );
    let rep = stdout_json(&out);
    let rows = rep["checks"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let discrepancies = rep["discrepancies"].as_array().unwrap();
    assert_eq!(discrepancies.len(), 1, "{discrepancies:?}");
    assert_eq!(discrepancies[0]["claimed"], "60");
    assert_eq!(discrepancies[0]["computed"], "70");
}

#[test]
fn reproduce_rejects_unknown_tables() {
    let tmp = TempDir::new().unwrap();
    let out = run_in(tmp.path(), &["reproduce", "--table", "47", "--no-cache"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("47"));
}

#[test]
fn gv_check_evaluates_the_counting_bound() {
    let tmp = TempDir::new().unwrap();
    let rep = stdout_json(&run_in(tmp.path(), &["gv-check", "40", "32", "4", "3"]));
    assert_eq!(rep["checks"]["exceeds_gv"], true);

    let rep = stdout_json(&run_in(tmp.path(), &["gv-check", "90", "78", "4", "7"]));
    assert_eq!(rep["checks"]["exceeds_gv"], false);
    assert_eq!(rep["checks"]["parity_ok"], true);
}

fn search_params() -> Value {
    serde_json::json!({
        "p": 2,
        "field_degree": 4,
        "subfield_degree": 1,
        "N": [4, 6],
        "J": [2]
    })
}

#[test]
fn search_with_zero_budget_tries_nothing() {
    let tmp = TempDir::new().unwrap();
    let path = tmp.path().join("params.json");
    std::fs::write(&path, serde_json::to_vec(&search_params()).unwrap()).unwrap();
    let out = run_in(
        tmp.path(),
        &["search", path.to_str().unwrap(), "--budget", "0", "--no-cache"],
    );
    let rep = stdout_json(&out);
    assert_eq!(rep["checks"]["candidates_tried"], 0);
    assert_eq!(rep["checks"]["results"].as_array().unwrap().len(), 0);
}

#[test]
fn search_recovers_the_known_distance_four_code() {
    let tmp = TempDir::new().unwrap();
    let path = tmp.path().join("params.json");
    std::fs::write(&path, serde_json::to_vec(&search_params()).unwrap()).unwrap();
    let out = run_in(
        tmp.path(),
        &["search", path.to_str().unwrap(), "--budget", "1.0", "--no-cache"],
    );
    let rep = stdout_json(&out);
    let results = rep["checks"]["results"].as_array().unwrap();
    assert!(
        results.iter().any(|r| r["k"].as_i64() >= Some(4) && r["d_lower"].as_u64() >= Some(4)),
        "frontier misses the dimension-4 distance-4 code: {results:?}"
    );
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), &subfield_config());
    let report_path = tmp.path().join("report.json");
    let out = run_in(
        tmp.path(),
        &["construct", &cfg, "--no-cache", "--out", report_path.to_str().unwrap()],
    );
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&report_path).unwrap();
    let rep: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(rep["stabilizer"][0]["k"], 4);
}
