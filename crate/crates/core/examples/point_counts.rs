//! Counts `F_p`-points of `X` by enumerating isotropic flags and checks the
//! count against `|Sp₄(F_p)/B| = (p+1)²(p²+1)`.
//!
//! `cargo run --release --example point_counts`

use flagcoh::geom::ChartModel;
use flagcoh::Prime;

fn main() -> flagcoh::Result<()> {
    let model = ChartModel::new();
    for p in [3, 5, 7] {
        let count = model.point_count(Prime::new(p)?)?;
        let expected = (p as u64 + 1).pow(2) * (p as u64 * p as u64 + 1);
        println!("p = {p}: {count} points (expected {expected})");
    }
    Ok(())
}
