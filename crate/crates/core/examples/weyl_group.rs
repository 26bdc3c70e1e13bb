//! The Weyl group of `Sp₄`: lengths, the dot action, and the Borel–Weil–Bott
//! answer in characteristic zero.
//!
//! `cargo run --release --example weyl_group -- -9 0`

use flagcoh::rootdata::{bott_char0, dot_action, euler_characteristic};
use flagcoh::{Weight, WeylElement};

fn main() {
    let args: Vec<i64> = std::env::args().skip(1).map(|s| s.parse().expect("integer")).collect();
    let lambda = Weight::new(args.first().copied().unwrap_or(-9), args.get(1).copied().unwrap_or(0));
    for w in WeylElement::all() {
        let mu = dot_action(w, lambda);
        println!("{w:?} (length {}): w·λ = O({},{}){}", w.length(), mu.a, mu.b, if mu.is_dominant() { "  dominant" } else { "" });
    }
    println!("characteristic 0: h = {:?}, chi = {}", bott_char0(lambda), euler_characteristic(lambda));
}
