//! Acceptance gate: every criterion at its stated tolerance, one PASS/FAIL
//! line each, asserted together at the end.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use multdep_cli::verify::{criterion_name, Suite};

const SEED: u64 = 20240917;

/// Wall-clock limits per criterion.
fn time_limit(id: u8) -> Option<Duration> {
    match id {
        1 => Some(Duration::from_secs(10)),
        2 | 6 => Some(Duration::from_secs(60)),
        _ => None,
    }
}

/// Runs the binary inside `workdir` with the relative output directory
/// "artifacts", so both command lines (and the echoed jobs) are identical.
fn run_verify(workdir: &Path) -> (bool, BTreeMap<String, Vec<u8>>) {
    let _ = fs::remove_dir_all(workdir);
    fs::create_dir_all(workdir).expect("workdir");
    let out = workdir.join("artifacts");
    let status = Command::new(env!("CARGO_BIN_EXE_multdep"))
        .args(["verify", "--suite", "all", "--seed", &SEED.to_string(), "--out", "artifacts"])
        .current_dir(workdir)
        .stdout(std::process::Stdio::null())
        .status()
        .expect("binary runs");
    let mut files = BTreeMap::new();
    for entry in fs::read_dir(&out).expect("artifacts written") {
        let path = entry.expect("dir entry").path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        files.insert(name, fs::read(&path).expect("artifact readable"));
    }
    (status.code().is_some(), files)
}

#[test]
fn acceptance() {
    let suite = Suite::new(SEED);
    let mut lines = Vec::new();
    let mut all_passed = true;
    for id in 1..=9u8 {
        let start = Instant::now();
        let report = suite.criterion(id);
        let elapsed = start.elapsed();
        let in_time = time_limit(id).map_or(true, |limit| elapsed < limit);
        let passed = report.passed && in_time;
        all_passed &= passed;
        let line = format!(
            "{} criterion {id}: {} ({:.1}s{})",
            if passed { "PASS" } else { "FAIL" },
            criterion_name(id),
            elapsed.as_secs_f64(),
            time_limit(id).map_or(String::new(), |l| format!(", limit {}s", l.as_secs())),
        );
        println!("{line}");
        if !passed {
            println!("    detail: {}", report.detail);
        }
        lines.push(line);
    }

    // σ_6 is large; free it before the binary rebuilds it, and run the two
    // determinism passes one after the other
    drop(suite);
    let root = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    let outputs: Vec<_> = ["first", "second"].iter().map(|name| run_verify(&root.join(name))).collect();
    let (first, second) = (&outputs[0], &outputs[1]);
    let identical = first.0 && second.0 && !first.1.is_empty() && first.1 == second.1;
    all_passed &= identical;
    let names: Vec<&String> = first.1.keys().collect();
    println!(
        "{} criterion 10: determinism ({} artifacts {:?} byte-identical: {identical})",
        if identical { "PASS" } else { "FAIL" },
        first.1.len(),
        names
    );
    assert!(all_passed, "acceptance criteria failed; see the lines above");
}
