//! Cohomology of line bundles `O(a,b)` from truncated Čech complexes,
//! compared with Kempf vanishing and characteristic-zero Bott.
//!
//! `cargo run --release --example line_cohomology -- 3`

use flagcoh::cech::{Engine, EngineOptions};
use flagcoh::rootdata::{bott_char0, kempf_predicts};
use flagcoh::{Prime, Weight};

fn main() -> flagcoh::Result<()> {
    let p = std::env::args().nth(1).map_or(3, |s| s.parse().expect("prime"));
    let engine = Engine::new(Prime::new(p)?, EngineOptions::default());
    for (a, b) in [(0, 0), (2, 1), (-2, 1), (1, -2), (3, -3), (-4, 0), (-5, -1)] {
        let w = Weight::new(a, b);
        let h = engine.cohomology_line(w)?;
        let note = match kempf_predicts(w) {
            Some(k) if k == h.h => "agrees with Kempf",
            Some(_) => "DISAGREES with Kempf",
            None if bott_char0(w) == h.h => "same as characteristic 0",
            None => "differs from characteristic 0",
        };
        println!("O({a},{b}): {h}  [{note}]");
    }
    println!("{} per-weight complexes built", engine.builds());
    Ok(())
}
