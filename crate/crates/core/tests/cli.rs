//! End-to-end runs of the `mhcount` binary.

use std::fs;
use std::process::{Command, Output};

use mhcount::harness::{parse_csv, CSV_HEADER};

fn mhcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mhcount"))
        .args(args)
        .env_remove("MHCOUNT_BUDGET_NAIVE_EVALS")
        .env_remove("MHCOUNT_BUDGET_FAST_PREFIXES")
        .env_remove("MHCOUNT_BUDGET_PROBE_POINTS")
        .output()
        .expect("run mhcount")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn field_info_reports_modulus_and_generator() {
    let o = mhcount(&["field-info", "--p", "2", "--s", "3", "--tables"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["q"], 8);
    assert_eq!(v["modulus"], serde_json::json!([1, 0, 1, 1]));
    assert_eq!(v["exp"].as_array().unwrap().len(), 7);
    assert_eq!(v["log"].as_array().unwrap().len(), 8);

    let o = mhcount(&["field-info", "--p", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn count_agrees_between_counters() {
    let o = mhcount(&["count", "5 1 3 3 2 1,1,1 1 1", "--strict"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let c = &v["counts"];
    assert_eq!(c["n_total"], 26);
    assert_eq!(c["n_total"], c["n_naive"]);
    assert_eq!(c["n_star_direct"], c["n_star_ie"]);
}

#[test]
fn verify_passes_on_the_canonical_instance() {
    let o = mhcount(&["verify", "5 1 3 3 2 1,1,1 1 1", "--strict"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("main_estimate"));
    assert!(!text.lines().any(|l| l.contains(" FAIL ") && !l.contains('(')));
}

#[test]
fn strict_mode_rejects_hypothesis_violations() {
    // p = 3 divides mk = 6
    let o = mhcount(&["verify", "3 1 3 3 2 1,1,1 1 1", "--strict"]);
    assert_eq!(o.status.code(), Some(2));
    let o = mhcount(&["verify", "3 1 3 3 2 1,1,1 1 1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn count_respects_budgets() {
    let o = mhcount(&["count", "7 1 4 2 2 1,1,1,1 1 1", "--fast-prefixes", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn probe_reports_classification() {
    let o = mhcount(&["probe", "5 1 3 3 2 1,1,1 1 1", "--r", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ext_degree"], 2);
    assert_eq!(v["unclassified"], 0);
    assert!(v["infinity"]["violations"].as_array().unwrap().is_empty());
}

#[test]
fn sweep_config_precedence_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.conf");
    fs::write(
        &config,
        "# small sweep\nprimes = 5,7\nn_range = 3..4\nm_range = 2..3\nk_range = 2\n\
         coeff_mode = random\ncount = 2\nseed = 42\nstrict = false\nprobe_degrees = 1\n",
    )
    .unwrap();
    let run = |name: &str, extra: &[&str]| {
        let csv = dir.path().join(format!("{name}.csv"));
        let jsonl = dir.path().join(format!("{name}.jsonl"));
        let mut args = vec![
            "sweep",
            "--config",
            config.to_str().unwrap(),
            "--csv-path",
            csv.to_str().unwrap(),
            "--jsonl-path",
            jsonl.to_str().unwrap(),
        ];
        args.extend_from_slice(extra);
        let o = mhcount(&args);
        assert!(o.status.code().is_some_and(|c| c <= 1), "{o:?}");
        (fs::read_to_string(csv).unwrap(), fs::read_to_string(jsonl).unwrap())
    };

    let (a, jsonl) = run("a", &[]);
    let (b, _) = run("b", &["--workers", "1"]);
    assert_eq!(a, b);
    assert_eq!(a.lines().next().unwrap(), CSV_HEADER);
    let rows = parse_csv(a.as_bytes()).unwrap();
    assert_eq!(rows.len(), 2 * 2 * 2 * 2);
    assert_eq!(jsonl.lines().count(), rows.len());
    assert!(rows.iter().all(|r| r.k == 2));

    // the command line overrides the file
    let (c, _) = run("c", &["--primes", "11", "--seed", "7"]);
    let rows = parse_csv(c.as_bytes()).unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.p == 11));
    let (d, _) = run("d", &["--seed", "43"]);
    assert_ne!(a, d);
}

#[test]
fn sweep_to_stdout_and_strict_skips() {
    let o = mhcount(&[
        "sweep", "--primes", "3,5", "--n-range", "3", "--m-range", "3", "--k-range", "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = parse_csv(o.stdout.as_slice()).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].p, 5);
    assert_eq!(rows[0].verdict_main, "PASS");
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipped"));
}

#[test]
fn env_budget_is_overridden_by_flag() {
    let o = Command::new(env!("CARGO_BIN_EXE_mhcount"))
        .args(["count", "5 1 3 3 2 1,1,1 1 1"])
        .env("MHCOUNT_BUDGET_FAST_PREFIXES", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_mhcount"))
        .args(["count", "5 1 3 3 2 1,1,1 1 1", "--fast-prefixes", "1000"])
        .env("MHCOUNT_BUDGET_FAST_PREFIXES", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
