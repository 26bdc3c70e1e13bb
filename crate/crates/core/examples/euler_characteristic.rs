//! Euler characteristics from the Weyl dimension formula, for lines and for
//! expressions that rewrite into lines and kernels.
//!
//! `cargo run --release --example euler_characteristic -- "FU2(1)&O(1,-2)"`

use flagcoh::parse::parse_expr;
use flagcoh::rootdata::euler_characteristic;
use flagcoh::sheaf::rewrite;
use flagcoh::{Prime, Weight};

fn main() -> flagcoh::Result<()> {
    for (a, b) in [(0, 0), (1, 0), (0, 1), (3, 0), (-9, 0), (9, -9)] {
        println!("chi(O({a},{b})) = {}", euler_characteristic(Weight::new(a, b)));
    }
    let expr = std::env::args().nth(1).unwrap_or_else(|| "U2&O(0,1)".into());
    let e = parse_expr(&expr)?;
    for p in [3, 5] {
        let r = rewrite(&e, Prime::new(p)?)?;
        println!("p = {p}: chi({expr}) = {}", r.expr.euler_characteristic()?);
        for m in &r.markers {
            println!("    via {m}");
        }
    }
    Ok(())
}
