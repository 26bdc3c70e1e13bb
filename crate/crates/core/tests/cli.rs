use std::process::Command;

use flagcoh::cli::{self, Common, Format, EXIT_FAIL, EXIT_OK, EXIT_UNSTABLE, EXIT_UNSUPPORTED};
use flagcoh::claims::GridPoint;

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = cli::run(std::iter::once("flagcoh").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_flagcoh"));
    for (k, _) in std::env::vars() {
        if k.starts_with("FLAGCOH_") {
            c.env_remove(k);
        }
    }
    c
}

fn common(cache: Option<&std::path::Path>) -> Common {
    Common {
        p: vec![3],
        truncation: 0,
        t_max: 12,
        jobs: 1,
        cache_dir: cache.map(|p| p.to_path_buf()),
        seed: 11,
        format: Format::Json,
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["chi", "O(3,0)"]).0, EXIT_OK);
    assert_eq!(run(&["cohomology", "O(-2,1)", "--p", "3,5"]).0, EXIT_OK);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
    // unparsable or out-of-range input
    assert_eq!(run(&["chi", "O(3,"]).0, EXIT_UNSUPPORTED);
    assert_eq!(run(&["chi", "O(0,0)", "--p", "9"]).0, EXIT_UNSUPPORTED);
    assert_eq!(run(&["verify", "--claims", "C99"]).0, EXIT_UNSUPPORTED);
    assert_eq!(run(&["verify"]).0, EXIT_UNSUPPORTED);
    assert_eq!(run(&["verify", "--all", "--n", "7"]).0, EXIT_UNSUPPORTED);
    assert_eq!(run(&["frobnicate"]).0, EXIT_UNSUPPORTED);
    // one margin can never show two agreeing truncations
    assert_eq!(run(&["cohomology", "O(-2,1)", "--t-max", "0"]).0, EXIT_UNSTABLE);
    assert_eq!(run(&["verify", "--claims", "C3", "--t-max", "0"]).0, EXIT_UNSTABLE);
    assert_ne!(EXIT_FAIL, EXIT_UNSTABLE);
}

#[test]
fn cohomology_output() {
    let (code, out) = run(&["cohomology", "O(-2,1)", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["h"], serde_json::json!([0, 1, 0, 0, 0]));
    assert_eq!(v[0]["stabilized"], true);
    let (_, md) = run(&["chi", "O(-9,0) + O(9,-9)", "--format", "md"]);
    assert!(md.contains("| 104 |"), "{md}");
}

#[test]
fn environment_overrides() {
    let out = bin().args(["chi", "O(0,0)"]).env("FLAGCOH_P", "4").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_UNSUPPORTED));
    let out = bin().args(["chi", "O(1,0)"]).env("FLAGCOH_P", "5,7").env("FLAGCOH_FORMAT", "md").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| 5 | `O(1,0)` | 4 |") && text.contains("| 7 |"), "{text}");
    // flags win over the environment
    let out = bin().args(["chi", "O(0,0)", "--p", "3"]).env("FLAGCOH_P", "4").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
}

#[test]
fn grids() {
    assert_eq!(cli::grid(&[], &[]).unwrap().len(), 3);
    assert_eq!(cli::grid(&[3, 5], &[1]).unwrap(), vec![GridPoint::new(3, 1), GridPoint::new(5, 1)]);
    assert_eq!(cli::grid(&[], &[2]).unwrap(), vec![GridPoint::new(3, 2)]);
    assert!(cli::grid(&[6], &[]).is_err());
}

#[test]
fn warm_cache_builds_nothing_and_reports_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let ids: Vec<String> = ["C3", "C8", "C12"].iter().map(|s| s.to_string()).collect();
    let grid = [GridPoint::new(3, 1)];
    let (cold, cold_stats) = cli::verify(&ids, &grid, &common(Some(dir.path()))).unwrap();
    let (warm, warm_stats) = cli::verify(&ids, &grid, &common(Some(dir.path()))).unwrap();
    assert!(cold_stats.builds > 0);
    assert_eq!(warm_stats.builds, 0);
    assert!(warm_stats.cache_hits > 0);
    assert_eq!(cold.to_json(), warm.to_json());
    assert_eq!(cold.to_markdown(), warm.to_markdown());
    // and without a cache the report is the same bytes again
    let (fresh, _) = cli::verify(&ids, &grid, &common(None)).unwrap();
    assert_eq!(fresh.to_json(), cold.to_json());
    assert!(!cold.any_failed());
}

#[test]
fn binary_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let cache = dir.path().join("cache");
    let args = ["verify", "--claims", "C1,C3", "--p", "3", "--seed", "5"];
    let first = bin()
        .args(args)
        .args(["--cache-dir", cache.to_str().unwrap(), "--out", out.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(first.status.code(), Some(EXIT_OK));
    let json = std::fs::read_to_string(out.join("report.json")).unwrap();
    assert_eq!(json, String::from_utf8(first.stdout).unwrap());
    assert!(out.join("report.md").exists() && out.join("timings.json").exists());
    let second = bin().args(args).env("FLAGCOH_CACHE_DIR", &cache).output().unwrap();
    assert_eq!(String::from_utf8(second.stdout).unwrap(), json);
    assert!(String::from_utf8(second.stderr).unwrap().starts_with("0 complexes built"));
    let report: flagcoh::report::Report = serde_json::from_str(&json).unwrap();
    assert_eq!(report.seed, 5);
    assert_eq!(report.claims.len(), 2);
}
