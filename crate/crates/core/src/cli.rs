//! Command-line front end. Every flag can also be set through a `FLAGCOH_`
//! environment variable (`FLAGCOH_P=3,5`, `FLAGCOH_CACHE_DIR=…`).
//!
//! Exit codes: 0 ok, 1 a claim or check failed, 2 a truncation did not
//! stabilize, 3 unsupported input.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cache::Cache;
use crate::cech::{BettiVector, Engine, EngineOptions, Schedule};
use crate::claims::{run_suite, standard_claims, GridPoint, Verifier, DEFAULT_GRID};
use crate::error::{Error, Result};
use crate::field::Prime;
use crate::parse::parse_expr;
use crate::report::{Certificate, Report, RunStats};
use crate::sheaf::{omega1_kernel, omega2_kernel, rewrite, spinor_kernel};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_UNSTABLE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

const CERTIFICATE_POINTS: usize = 32;

#[derive(Debug, Parser)]
#[command(name = "flagcoh", version, about = "Exact sheaf cohomology on the Sp4 flag variety over F_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Euler characteristic of a sheaf expression.
    Chi {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Cohomology dimensions of a sheaf expression.
    Cohomology {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Verify vanishing claims on a grid of (p, n).
    Verify {
        /// Verify every registered claim.
        #[arg(long, conflicts_with = "claims")]
        all: bool,
        /// Comma-separated claim ids.
        #[arg(long, env = "FLAGCOH_CLAIMS", value_delimiter = ',')]
        claims: Vec<String>,
        /// Frobenius exponents; with `--p` the grid is their product.
        #[arg(long, env = "FLAGCOH_N", value_delimiter = ',')]
        n: Vec<u32>,
        /// Write report.json, report.md and timings.json here.
        #[arg(long, env = "FLAGCOH_OUT")]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Primes (comma-separated).
    #[arg(long, env = "FLAGCOH_P", value_delimiter = ',')]
    pub p: Vec<u32>,
    /// First truncation margin tried.
    #[arg(long, env = "FLAGCOH_TRUNCATION", default_value_t = Schedule::default().t0)]
    pub truncation: u32,
    /// Largest truncation margin tried before giving up.
    #[arg(long = "t-max", env = "FLAGCOH_T_MAX", default_value_t = Schedule::default().t_max)]
    pub t_max: u32,
    /// Worker threads (0 = all cores).
    #[arg(long, env = "FLAGCOH_JOBS", default_value_t = 0)]
    pub jobs: usize,
    /// Content-addressed result cache.
    #[arg(long = "cache-dir", env = "FLAGCOH_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Seed for the random points of rank certificates.
    #[arg(long, env = "FLAGCOH_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, env = "FLAGCOH_FORMAT", value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

impl Common {
    fn options(&self) -> EngineOptions {
        let schedule = Schedule { t0: self.truncation, step: 1, t_max: self.t_max };
        EngineOptions { schedule, ..Default::default() }
    }

    fn primes(&self) -> Result<Vec<Prime>> {
        let ps = if self.p.is_empty() { vec![3] } else { self.p.clone() };
        ps.into_iter().map(Prime::new).collect()
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing the result to `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_UNSUPPORTED,
            };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    let jobs = match &cli.command {
        Command::Chi { common, .. } | Command::Cohomology { common, .. } | Command::Verify { common, .. } => common.jobs,
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            return EXIT_FAIL;
        }
    };
    let mut buf = Vec::new();
    let outcome = pool.install(|| execute(&cli.command, &mut buf));
    let _ = out.write_all(&buf);
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotStabilized { .. } => EXIT_UNSTABLE,
        Error::Unsupported(_)
        | Error::Parse(_)
        | Error::Config(_)
        | Error::InvalidPrime(_)
        | Error::PointCountInfeasible(_) => EXIT_UNSUPPORTED,
        _ => EXIT_FAIL,
    }
}

#[derive(Serialize)]
struct ChiRow {
    p: u32,
    expr: String,
    canonical: String,
    chi: i64,
}

#[derive(Serialize)]
struct CohomologyRow {
    p: u32,
    expr: String,
    canonical: String,
    #[serde(flatten)]
    betti: BettiVector,
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Chi { expr, common } => {
            let e = parse_expr(expr)?;
            let mut rows = Vec::new();
            for p in common.primes()? {
                let r = rewrite(&e, p)?;
                rows.push(ChiRow { p: p.get(), expr: expr.clone(), canonical: r.expr.canonical()?, chi: r.expr.euler_characteristic()? });
            }
            match common.format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
                Format::Md => {
                    writeln!(out, "| p | expression | chi |\n|---|---|---|")?;
                    for r in &rows {
                        writeln!(out, "| {} | `{}` | {} |", r.p, r.expr, r.chi)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Cohomology { expr, common } => {
            let e = parse_expr(expr)?;
            let mut rows = Vec::new();
            for p in common.primes()? {
                let engine = engine(p, common)?;
                let canonical = rewrite(&e, p)?.expr.canonical()?;
                let betti = engine.cohomology_expr(&e)?;
                rows.push(CohomologyRow { p: p.get(), expr: expr.clone(), canonical, betti });
            }
            match common.format {
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?,
                Format::Md => {
                    writeln!(out, "| p | expression | h0 | h1 | h2 | h3 | h4 | chi | stabilized |")?;
                    writeln!(out, "|---|---|---|---|---|---|---|---|---|")?;
                    for r in &rows {
                        let h = r.betti.h;
                        writeln!(
                            out,
                            "| {} | `{}` | {} | {} | {} | {} | {} | {} | {} |",
                            r.p, r.expr, h[0], h[1], h[2], h[3], h[4], r.betti.chi, r.betti.stabilized
                        )?;
                    }
                }
            }
            Ok(if rows.iter().all(|r| r.betti.stabilized) { EXIT_OK } else { EXIT_UNSTABLE })
        }
        Command::Verify { all, claims, n, out: out_dir, common } => {
            if !*all && claims.is_empty() {
                return Err(Error::Config("pass --all or --claims".into()));
            }
            let grid = grid(&common.p, n)?;
            let (report, stats) = verify(if *all { &[] } else { claims }, &grid, common)?;
            if let Some(dir) = out_dir {
                write_reports(dir, &report, &stats)?;
            }
            match common.format {
                Format::Json => write!(out, "{}", report.to_json())?,
                Format::Md => write!(out, "{}", report.to_markdown())?,
            }
            eprintln!(
                "{} complexes built, {} cache hits, {:.1}s",
                stats.builds, stats.cache_hits, stats.total_seconds
            );
            Ok(if !report.any_failed() {
                EXIT_OK
            } else if report.only_unstable() {
                EXIT_UNSTABLE
            } else {
                EXIT_FAIL
            })
        }
    }
}

fn engine(p: Prime, common: &Common) -> Result<Engine> {
    let mut e = Engine::new(p, common.options());
    if let Some(dir) = &common.cache_dir {
        e = e.with_cache(Cache::open(dir)?);
    }
    Ok(e)
}

/// The default grid unless primes or exponents are given explicitly.
pub fn grid(p: &[u32], n: &[u32]) -> Result<Vec<GridPoint>> {
    if p.is_empty() && n.is_empty() {
        return Ok(DEFAULT_GRID.to_vec());
    }
    let ps = if p.is_empty() { vec![3] } else { p.to_vec() };
    let ns = if n.is_empty() { vec![1] } else { n.to_vec() };
    let mut out = Vec::new();
    for &p in &ps {
        Prime::new(p)?;
        for &n in &ns {
            if !(1..=4).contains(&n) {
                return Err(Error::Unsupported(format!("Frobenius exponent n = {n} (supported: 1..=4)")));
            }
            out.push(GridPoint::new(p, n));
        }
    }
    Ok(out)
}

/// Runs the claim suite and the constant-rank certificates.
pub fn verify(ids: &[String], grid: &[GridPoint], common: &Common) -> Result<(Report, RunStats)> {
    let start = Instant::now();
    let verifier = Verifier::new(common.options(), common.cache_dir.clone());
    let results = run_suite(&verifier, ids, grid)?;
    let mut primes: Vec<u32> = grid.iter().map(|g| g.p).collect();
    primes.sort_unstable();
    primes.dedup();
    let mut certificates = Vec::new();
    for p in primes {
        for k in [spinor_kernel(), omega1_kernel(), omega2_kernel()] {
            let ok = k.certify_rank(Prime::new(p)?, CERTIFICATE_POINTS, common.seed).is_ok();
            certificates.push(Certificate { p, bundle: k.name.clone(), points: CERTIFICATE_POINTS, seed: common.seed, ok });
        }
    }
    let (builds, cache_hits) = verifier.counters();
    let stats = RunStats {
        seconds: results.iter().map(|(r, s)| (r.id.clone(), r.grid, *s)).collect(),
        total_seconds: start.elapsed().as_secs_f64(),
        builds,
        cache_hits,
    };
    let claims = results.into_iter().map(|(r, _)| r).collect();
    Ok((Report::new(common.seed, common.options().schedule, grid.to_vec(), certificates, claims), stats))
}

pub fn write_reports(dir: &std::path::Path, report: &Report, stats: &RunStats) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("report.json"), report.to_json())?;
    std::fs::write(dir.join("report.md"), report.to_markdown())?;
    std::fs::write(dir.join("timings.json"), serde_json::to_string_pretty(stats)? + "\n")?;
    Ok(())
}

/// Ids of every registered claim, in order.
pub fn claim_ids() -> Vec<&'static str> {
    standard_claims().iter().map(|c| c.id).collect()
}
