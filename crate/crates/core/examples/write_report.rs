//! Runs the claim suite on the default grid (or `p n`) and writes
//! `report.json`, `report.md` and `timings.json` into a directory. The
//! JSON is byte-identical across runs; timings are kept apart.
//!
//! `cargo run --release --example write_report -- out/ 3 1`

use std::path::PathBuf;

use flagcoh::cli::{grid, verify, write_reports, Common, Format};

fn main() -> flagcoh::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let dir = PathBuf::from(args.first().map_or("flagcoh-report", |s| s.as_str()));
    let p: Vec<u32> = args.get(1).map(|s| s.parse().expect("prime")).into_iter().collect();
    let n: Vec<u32> = args.get(2).map(|s| s.parse().expect("exponent")).into_iter().collect();
    let common = Common {
        p: p.clone(),
        truncation: 0,
        t_max: 12,
        jobs: 0,
        cache_dir: Some(dir.join("cache")),
        seed: 0,
        format: Format::Json,
    };
    let (report, stats) = verify(&[], &grid(&p, &n)?, &common)?;
    write_reports(&dir, &report, &stats)?;
    println!(
        "{} verified, {} with trusted steps, {} failed, {} skipped; {} builds, {} cache hits -> {}",
        report.summary.verified,
        report.summary.verified_with_trusted_steps,
        report.summary.failed,
        report.summary.skipped,
        stats.builds,
        stats.cache_hits,
        dir.display()
    );
    Ok(())
}
