//! Serre duality `hⁱ(λ) = h⁴⁻ⁱ(−λ − 2ρ)` checked on computed vectors.
//!
//! `cargo run --release --example serre_duality`

use flagcoh::cech::{Engine, EngineOptions};
use flagcoh::{Prime, Weight};

fn main() -> flagcoh::Result<()> {
    let engine = Engine::new(Prime::new(3)?, EngineOptions::default());
    for (a, b) in [(0, 0), (-2, 1), (3, -3), (5, -4), (-1, -1)] {
        let c = engine.dual_check(Weight::new(a, b))?;
        println!("{:?} -> {:?}: {:?} vs {:?}  {}", c.lambda, c.dual, c.h.h, c.h_dual.h, if c.pass { "ok" } else { "MISMATCH" });
    }
    Ok(())
}
