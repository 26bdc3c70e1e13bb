//! Cohomology of a sheaf expression: parse, rewrite named bundles, compute
//! each summand weight by weight.
//!
//! `cargo run --release --example expression_cohomology -- 3 "FU2(1)&O(3,0)"`

use flagcoh::cech::{Engine, EngineOptions};
use flagcoh::parse::parse_expr;
use flagcoh::sheaf::rewrite;
use flagcoh::Prime;

fn main() -> flagcoh::Result<()> {
    let mut args = std::env::args().skip(1);
    let p = Prime::new(args.next().map_or(3, |s| s.parse().expect("prime")))?;
    let expr = args.next().unwrap_or_else(|| "U2 + U2*&O(-1,0)".into());

    let e = parse_expr(&expr)?;
    let r = rewrite(&e, p)?;
    let engine = Engine::new(p, EngineOptions::default());
    for atom in r.expr.atoms()? {
        let h = engine.cohomology_atom(&atom)?;
        let name = atom.canonical();
        let short = if name.len() > 60 { format!("{}…", &name[..60]) } else { name };
        println!("  {short}: {h}");
        for w in engine.weight_decomposition(&atom)?.iter().filter(|w| w.h != [0; 5]) {
            println!("      weight {:?} x{}: {:?}", w.mu, w.multiplicity, w.h);
        }
    }
    println!("{expr} over F_{}: {}", p.get(), engine.cohomology_expr(&e)?);
    Ok(())
}
