//! Euler characteristic additivity over every registered short exact
//! sequence: `χ(A) − χ(B) + χ(C) = 0`.
//!
//! `cargo run --release --example exact_sequences`

use flagcoh::claims::{registered_sequences, DEFAULT_GRID};

fn main() -> flagcoh::Result<()> {
    for g in DEFAULT_GRID {
        let p = flagcoh::Prime::new(g.p)?;
        for s in registered_sequences(g) {
            let chis = s.chis(p)?;
            let alt = s.alternating_chi(p)?;
            println!("{g} {:<70} chi = {chis:?}  alternating sum {alt}", s.name);
        }
    }
    Ok(())
}
