//! Constant-rank certificates: the presentation matrices of the named
//! bundles are evaluated at random `F_p`-points of `X`.
//!
//! `cargo run --release --example rank_certificate -- 5 64 7`

use flagcoh::sheaf::{omega1_kernel, omega2_kernel, spinor_kernel};
use flagcoh::Prime;

fn main() -> flagcoh::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("number"));
    let p = Prime::new(args.next().unwrap_or(5) as u32)?;
    let count = args.next().unwrap_or(64) as usize;
    let seed = args.next().unwrap_or(0);
    for k in [spinor_kernel(), omega1_kernel(), omega2_kernel()] {
        k.certify_rank(p, count, seed)?;
        println!("{}: rank {} of {} at {count} points, bundle rank {}", k.name, k.rank, k.source.len(), k.bundle_rank());
    }
    Ok(())
}
