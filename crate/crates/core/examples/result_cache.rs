//! The content-addressed cache: a second engine over the same directory
//! answers from disk without building a single complex.
//!
//! `cargo run --release --example result_cache`

use flagcoh::cache::Cache;
use flagcoh::cech::{Engine, EngineOptions};
use flagcoh::parse::parse_expr;
use flagcoh::Prime;

fn main() -> flagcoh::Result<()> {
    let dir = std::env::temp_dir().join(format!("flagcoh-cache-demo-{}", std::process::id()));
    let e = parse_expr("FU2(1)&O(3,0) + O(-2,1)")?;
    for run in ["cold", "warm"] {
        let engine = Engine::new(Prime::new(3)?, EngineOptions::default()).with_cache(Cache::open(&dir)?);
        let h = engine.cohomology_expr(&e)?;
        let cache = engine.cache().expect("cache attached");
        println!("{run}: {h}; {} builds, {} hits, {} misses", engine.builds(), cache.hits(), cache.misses());
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
