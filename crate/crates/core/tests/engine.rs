//! Engine results against oracles that do not go through the Čech engine:
//! cohomology of `P³` and of the quadric `Q₃`, Serre duality, and the
//! agreement of independent evaluation strategies.

use flagcoh::cech::{CoverMode, Engine, EngineOptions, Schedule};
use flagcoh::parse::parse_expr;
use flagcoh::rootdata::{bott_char0, euler_characteristic, kempf_predicts};
use flagcoh::{Prime, Weight};

fn engine(p: u32) -> Engine {
    Engine::new(Prime::new(p).unwrap(), EngineOptions::default())
}

fn binom(n: i64, k: i64) -> u64 {
    if n < k || k < 0 {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

fn h(e: &Engine, expr: &str) -> [u64; 5] {
    let b = e.cohomology_expr(&parse_expr(expr).unwrap()).unwrap();
    assert!(b.stabilized, "{expr}");
    b.h
}

#[test]
fn pullbacks_from_projective_space() {
    let e = engine(3);
    for d in -7..=4 {
        let want = if d >= 0 {
            [binom(d + 3, 3), 0, 0, 0, 0]
        } else if d <= -4 {
            [0, 0, 0, binom(-d - 1, 3), 0]
        } else {
            [0; 5]
        };
        assert_eq!(e.cohomology_line(Weight::new(d, 0)).unwrap().h, want, "O({d},0)");
    }
}

#[test]
fn pullbacks_from_the_quadric() {
    // h⁰(Q₃, O(k)) = C(k+4,4) − C(k+2,4); ω = O(−3)
    let h0 = |k: i64| if k < 0 { 0 } else { binom(k + 4, 4) - binom(k + 2, 4) };
    let e = engine(3);
    for m in -6..=3 {
        let want = if m >= 0 {
            [h0(m), 0, 0, 0, 0]
        } else if m <= -3 {
            [0, 0, 0, h0(-3 - m), 0]
        } else {
            [0; 5]
        };
        assert_eq!(e.cohomology_line(Weight::new(0, m)).unwrap().h, want, "O(0,{m})");
    }
}

#[test]
fn kempf_and_char0_for_small_weights() {
    for p in [3, 5] {
        let e = engine(p);
        for a in 0..=2 {
            for b in 0..=2 {
                let w = Weight::new(a, b);
                assert_eq!(Some(e.cohomology_line(w).unwrap().h), kempf_predicts(w));
            }
        }
    }
    // small non-dominant weights see no characteristic-p effects
    let e = engine(3);
    for w in [Weight::new(-2, 1), Weight::new(1, -2), Weight::new(-3, 1), Weight::new(-4, 0)] {
        assert_eq!(e.cohomology_line(w).unwrap().h, bott_char0(w), "{w:?}");
    }
}

#[test]
fn covers_agree() {
    // both cover restrictions are valid for these lines
    for w in [Weight::new(1, 1), Weight::new(0, -2), Weight::new(-1, 0), Weight::new(2, -1)] {
        let results: Vec<[u64; 5]> = [CoverMode::X, CoverMode::P, CoverMode::Both]
            .into_iter()
            .map(|mode| {
                let opts = EngineOptions { mode: Some(mode), ..Default::default() };
                Engine::new(Prime::new(3).unwrap(), opts).cohomology_line(w).unwrap().h
            })
            .collect();
        assert!(results.windows(2).all(|r| r[0] == r[1]), "{w:?}: {results:?}");
    }
}

#[test]
fn weyl_symmetry_shortcut_matches_all_weights() {
    let all = Engine::new(Prime::new(3).unwrap(), EngineOptions { all_weights: true, ..Default::default() });
    let dom = engine(3);
    for expr in ["O(2,1)", "O(-2,1)", "U2&O(0,1)", "U2*&O(-2,0)", "Omega1&O(1,0)"] {
        let e = parse_expr(expr).unwrap();
        assert_eq!(all.cohomology_expr(&e).unwrap().h, dom.cohomology_expr(&e).unwrap().h, "{expr}");
    }
}

#[test]
fn differentials_square_to_zero() {
    let opts = EngineOptions { verify_d2: true, ..Default::default() };
    let e = Engine::new(Prime::new(3).unwrap(), opts);
    for expr in ["O(1,-2)", "O(-3,2)", "U2&O(1,0)", "FU2(1)&O(3,0)", "Omega2&O(0,1)"] {
        e.cohomology_expr(&parse_expr(expr).unwrap()).unwrap();
    }
}

#[test]
fn larger_truncations_change_nothing() {
    let later = Schedule { t0: 2, step: 1, t_max: 14 };
    let confirm = Engine::new(Prime::new(3).unwrap(), EngineOptions { confirm: true, ..Default::default() });
    let late = Engine::new(Prime::new(3).unwrap(), EngineOptions { schedule: later, ..Default::default() });
    for expr in ["O(3,-3)", "O(-4,1)", "U2*&O(-1,0)", "FU2(1)&O(3,0)"] {
        let e = parse_expr(expr).unwrap();
        let a = confirm.cohomology_expr(&e).unwrap();
        let b = late.cohomology_expr(&e).unwrap();
        assert_eq!(a.h, b.h, "{expr}");
    }
}

#[test]
fn named_bundles() {
    let e = engine(3);
    // U₂* has the 4-dimensional symplectic space as sections
    assert_eq!(h(&e, "U2&O(0,1)"), [4, 0, 0, 0, 0]);
    assert_eq!(h(&e, "U2"), [0; 5]);
    assert_eq!(h(&e, "FU2(1)"), [0; 5]);
    assert_eq!(h(&e, "O(0,0) + O(1,0)"), [5, 0, 0, 0, 0]);
    assert_eq!(euler_characteristic(Weight::new(-9, 0)) + euler_characteristic(Weight::new(9, -9)), 104);
}

#[test]
fn serre_duality_for_kernels() {
    // (E(a,b))^∨ ⊗ ω = E^∨(−a−2, −b−2)
    let e = engine(3);
    for (lhs, rhs) in [
        ("U2&O(1,-2)", "U2*&O(-3,0)"),
        ("U2*&O(0,-1)", "U2&O(-2,-1)"),
        ("FU2(1)&O(1,-2)", "FU2*(1)&O(-3,0)"),
    ] {
        let mut a = h(&e, lhs);
        a.reverse();
        assert_eq!(a, h(&e, rhs), "{lhs} vs {rhs}");
    }
    assert_eq!(h(&e, "FU2(1)&O(1,-2)"), [0, 0, 11, 0, 0]);
}

#[test]
fn serre_duality_for_lines_at_five() {
    let c = engine(5).dual_check(Weight::new(1, -2)).unwrap();
    assert!(c.pass);
    assert_eq!(engine(3).dual_check(Weight::ZERO).unwrap().h_dual.h, [0, 0, 0, 0, 1]);
}
