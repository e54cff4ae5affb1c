//! End-to-end runs of the binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use multdep_core::golden;
use serde_json::Value;

fn multdep(args: &[&str], workdir: &str) -> Output {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(workdir);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    Command::new(env!("CARGO_BIN_EXE_multdep"))
        .args(args)
        .current_dir(&dir)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn workdir(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn divpoly_reports_frozen_psi3() {
    let out = multdep(&["divpoly", "--curve", "a=0,b=1", "--nmax", "5", "--out", "d"], "cli_divpoly");
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["result"]["rows"][2]["psi"], golden::PSI3_A0_B1.trim());
    assert_eq!(doc["result"]["shape_ok"], true);
    let csv = fs::read_to_string(workdir("cli_divpoly").join("d/divpoly_heights.csv")).unwrap();
    assert!(csv.starts_with("# job: "));
    assert_eq!(csv.lines().count(), 2 + 5);
}

#[test]
fn relate_reports_product_of_resultants() {
    let out = multdep(&["relate", "--phis", "X-1,X", "--K", "1", "--L", "1"], "cli_relate");
    assert!(out.status.success());
    let doc = json(&out);
    assert_eq!(doc["result"]["table"]["kind"], "MULT_MULT");
    // Res(X − 1, X) = 1 is the only nontrivial pair
    assert_eq!(doc["result"]["table"]["t"], "1");
    assert_eq!(doc["result"]["all_within_hadamard"], true);
}

#[test]
fn sweep_matches_frozen_counts() {
    let out = multdep(
        &["sweep", "--phis", "X", "--rhos", "X+1", "--mode", "mult_mult", "--t", "3", "--pmax", "100"],
        "cli_sweep",
    );
    assert!(out.status.success());
    let doc = json(&out);
    let rows = doc["result"]["rows"].as_array().unwrap();
    let frozen = golden::csv_rows(golden::SWEEP_X_XPLUS1_T3);
    for row in rows {
        let p = row["p"].as_u64().unwrap().to_string();
        let expected = frozen.iter().find(|r| r[0] == p).expect("prime in golden file");
        assert_eq!(row["count"].to_string(), expected[1], "p = {p}");
    }
}

#[test]
fn invalid_jobs_exit_with_structured_error() {
    let out = multdep(&["relate", "--phis", "X", "--K", "0"], "cli_invalid");
    assert_eq!(out.status.code(), Some(2));
    let doc = json(&out);
    assert_eq!(doc["error"], "invalid_job");
    assert_eq!(doc["field"], "K");

    let out = multdep(&["locus", "--set", "Z"], "cli_invalid_set");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["field"], "set");
}

#[test]
fn toml_specs_run_like_flags() {
    let dir = workdir("cli_toml_spec");
    fs::create_dir_all(&dir).unwrap();
    let spec = dir.join("job.toml");
    fs::write(&spec, "subcommand = \"relate\"\nphis = [\"X-1\", \"X\"]\nK = 1\nL = 1\n").unwrap();
    let from_toml = multdep(&["run", spec.to_str().unwrap()], "cli_toml");
    let from_flags = multdep(&["relate", "--phis", "X-1,X", "--K", "1", "--L", "1"], "cli_flags");
    assert!(from_toml.status.success());
    assert_eq!(from_toml.stdout, from_flags.stdout);

    fs::write(&spec, "subcommand = \"relate\"\nbogus = 1\n").unwrap();
    let rejected = multdep(&["run", spec.to_str().unwrap()], "cli_toml_bad");
    assert_eq!(rejected.status.code(), Some(2));
}

#[test]
fn semaev_writes_polynomial_and_checks_zero_sets() {
    let out = multdep(&["semaev", "--curve", "a=0,b=1", "--n", "3", "--pmax", "13", "--out", "s"], "cli_semaev");
    assert!(out.status.success());
    let text = fs::read_to_string(workdir("cli_semaev").join("s/sigma_3.txt")).unwrap();
    let body: Vec<&str> = text.lines().skip(1).collect();
    let frozen: Vec<&str> = golden::SIGMA3_A0_B1.lines().collect();
    assert_eq!(body, frozen);
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"mismatches\": 0"));
}
