//! Verifies registered claims at one grid point and prints a row per claim.
//!
//! `cargo run --release --example verify_claims -- 3 1 C2 C3`

use flagcoh::cech::EngineOptions;
use flagcoh::claims::{run_suite, GridPoint, Verifier};

fn main() -> flagcoh::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p = args.first().map_or(Ok(3), |s| s.parse()).expect("prime");
    let n = args.get(1).map_or(Ok(1), |s| s.parse()).expect("Frobenius order");
    let ids: Vec<String> = args.iter().skip(2).cloned().collect();

    let verifier = Verifier::new(EngineOptions::default(), None);
    for (r, secs) in run_suite(&verifier, &ids, &[GridPoint::new(p, n)])? {
        println!("{:<4} {:<28} {:>8.2}s  {}", r.id, r.status.as_str(), secs, r.title);
        for leaf in r.leaves.iter().filter(|l| !l.ok) {
            println!("       leaf {} = {:?} violates {}", leaf.expr, leaf.h, leaf.expect);
        }
        if let Some(d) = &r.detail {
            println!("       {d}");
        }
    }
    Ok(())
}
