//! Root datum of type B2 (= C2) for Sp4: weights, Weyl group, and the
//! characteristic-free Euler characteristic of line bundles on G/B.
//!
//! Weights are written `a·ω_α + b·ω_β` with `α` the short simple root and
//! `β` the long one. Internally the epsilon basis is used:
//! `ω_α = ε₁`, `ω_β = ε₁ + ε₂`, so `α = ε₁ − ε₂` and `β = 2ε₂`.

use serde::{Deserialize, Serialize};

/// An integral weight `a·ω_α + b·ω_β`, naming the line bundle `O(a,b)` on G/B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub a: i64,
    pub b: i64,
}

/// `ρ = ω_α + ω_β`.
pub const RHO: Weight = Weight { a: 1, b: 1 };

impl Weight {
    pub const fn new(a: i64, b: i64) -> Self {
        Weight { a, b }
    }

    pub const ZERO: Weight = Weight { a: 0, b: 0 };

    /// Epsilon coordinates `(a + b, b)`.
    pub fn eps(self) -> [i64; 2] {
        [self.a + self.b, self.b]
    }

    pub fn from_eps(e: [i64; 2]) -> Self {
        Weight { a: e[0] - e[1], b: e[1] }
    }

    pub fn scale(self, k: i64) -> Self {
        Weight { a: self.a * k, b: self.b * k }
    }

    pub fn is_dominant(self) -> bool {
        self.a >= 0 && self.b >= 0
    }
}

impl std::ops::Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight { a: self.a + o.a, b: self.b + o.b }
    }
}

impl std::ops::Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        Weight { a: self.a - o.a, b: self.b - o.b }
    }
}

impl std::ops::Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight { a: -self.a, b: -self.b }
    }
}

impl std::fmt::Display for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// An element of the Weyl group of B2, a signed permutation of `(ε₁, ε₂)`:
/// `v ↦ (s₀·v[perm₀], s₁·v[perm₁])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeylElement {
    swap: bool,
    signs: [i8; 2],
}

impl WeylElement {
    pub const IDENTITY: WeylElement = WeylElement { swap: false, signs: [1, 1] };
    /// Reflection in the short simple root `ε₁ − ε₂`.
    pub const S_ALPHA: WeylElement = WeylElement { swap: true, signs: [1, 1] };
    /// Reflection in the long simple root `2ε₂`.
    pub const S_BETA: WeylElement = WeylElement { swap: false, signs: [1, -1] };
    pub const LONGEST: WeylElement = WeylElement { swap: false, signs: [-1, -1] };

    /// All eight elements, identity first.
    pub fn all() -> Vec<WeylElement> {
        let mut out = Vec::with_capacity(8);
        for swap in [false, true] {
            for s0 in [1i8, -1] {
                for s1 in [1i8, -1] {
                    out.push(WeylElement { swap, signs: [s0, s1] });
                }
            }
        }
        out
    }

    pub fn act_eps(self, v: [i64; 2]) -> [i64; 2] {
        let (x, y) = if self.swap { (v[1], v[0]) } else { (v[0], v[1]) };
        [self.signs[0] as i64 * x, self.signs[1] as i64 * y]
    }

    pub fn act(self, w: Weight) -> Weight {
        Weight::from_eps(self.act_eps(w.eps()))
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(self) -> u32 {
        positive_roots_eps()
            .iter()
            .filter(|r| {
                let img = self.act_eps(**r);
                !is_positive_root(img)
            })
            .count() as u32
    }

    /// `(-1)^length`, equal to the determinant of the signed permutation.
    pub fn sign(self) -> i64 {
        let d = if self.swap { -1 } else { 1 };
        d * self.signs[0] as i64 * self.signs[1] as i64
    }

    pub fn compose(self, other: WeylElement) -> WeylElement {
        // (self ∘ other)(v): find by evaluation on a generic vector
        let v = [3, 7];
        let img = self.act_eps(other.act_eps(v));
        *WeylElement::all()
            .iter()
            .find(|w| w.act_eps(v) == img)
            .expect("Weyl group closed under composition")
    }
}

/// Positive roots in epsilon coordinates: `ε₁−ε₂, 2ε₂, ε₁+ε₂, 2ε₁`.
pub fn positive_roots_eps() -> [[i64; 2]; 4] {
    [[1, -1], [0, 2], [1, 1], [2, 0]]
}

fn is_positive_root(v: [i64; 2]) -> bool {
    positive_roots_eps().contains(&v)
}

/// `w·λ = w(λ + ρ) − ρ`.
pub fn dot_action(w: WeylElement, lambda: Weight) -> Weight {
    w.act(lambda + RHO) - RHO
}

/// Euler characteristic of `O(λ)` on G/B:
/// `(a+1)(b+1)(a+b+2)(a+2b+3)/6`. Characteristic-free.
pub fn euler_characteristic(lambda: Weight) -> i64 {
    let Weight { a, b } = lambda;
    let num = (a + 1) * (b + 1) * (a + b + 2) * (a + 2 * b + 3);
    debug_assert_eq!(num % 6, 0);
    num / 6
}

/// Serre dual weight `−λ − 2ρ`.
pub fn serre_dual(lambda: Weight) -> Weight {
    Weight::new(-lambda.a - 2, -lambda.b - 2)
}

/// Kempf vanishing: for dominant λ the cohomology is `(χ(λ), 0, 0, 0, 0)`.
pub fn kempf_predicts(lambda: Weight) -> Option<[u64; 5]> {
    if lambda.is_dominant() {
        Some([euler_characteristic(lambda) as u64, 0, 0, 0, 0])
    } else {
        None
    }
}

/// Borel–Weil–Bott in characteristic zero: if `λ + ρ` is regular, the only
/// nonzero group sits in degree `ℓ(w)`, where `w·λ` is dominant, and has
/// dimension `|χ(λ)|`; otherwise everything vanishes. Over `F_p` this is
/// only a reference value.
pub fn bott_char0(lambda: Weight) -> [u64; 5] {
    let mut h = [0u64; 5];
    for w in WeylElement::all() {
        let mu = dot_action(w, lambda);
        if mu.is_dominant() {
            h[w.length() as usize] = euler_characteristic(mu) as u64;
            return h;
        }
    }
    h
}

/// Symbolic names for the line bundles appearing in the argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LineBundleName {
    /// `π*O_{P³}(d)`
    PiStar(i64),
    /// `q*O_{Q₃}(m)`
    QStar(i64),
    /// `O_π(c)`, relative degree along the fibres of `π`
    RelPi(i64),
    /// `O_q(c) = π*O_{P³}(c)`
    RelQ(i64),
    /// `ω_{G/B}`
    Canonical,
    Product(Vec<LineBundleName>),
}

impl LineBundleName {
    pub fn to_weight(&self) -> Weight {
        match self {
            LineBundleName::PiStar(d) => Weight::new(*d, 0),
            LineBundleName::QStar(m) => Weight::new(0, *m),
            LineBundleName::RelPi(c) => Weight::new(-c, *c),
            LineBundleName::RelQ(c) => Weight::new(*c, 0),
            LineBundleName::Canonical => Weight::new(-2, -2),
            LineBundleName::Product(v) => v.iter().fold(Weight::ZERO, |acc, n| acc + n.to_weight()),
        }
    }
}

// ---------------------------------------------------------------------------
// Weight multiplicities of the Euler characteristic as a T-character.

/// Kostant partition function for the positive roots of B2, epsilon coordinates.
pub fn kostant_partition(v: [i64; 2]) -> i64 {
    // n1(1,-1) + n2(0,2) + n3(1,1) + n4(2,0) = v
    let (x, y) = (v[0], v[1]);
    if x < 0 || (x + y) % 2 != 0 || x + y < 0 {
        return 0;
    }
    let mut count = 0;
    let mut n4 = 0;
    while 2 * n4 <= x {
        for n3 in 0..=(x - 2 * n4) {
            let n1 = x - 2 * n4 - n3;
            let r = y + n1 - n3;
            if r >= 0 && r % 2 == 0 {
                count += 1;
            }
        }
        n4 += 1;
    }
    count
}

/// Multiplicity of the torus weight `mu` (epsilon coordinates) in the
/// virtual character `Σ(−1)^i H^i(G/B, O(λ))`, via Kostant's formula.
pub fn chi_weight_multiplicity(lambda: Weight, mu: [i64; 2]) -> i64 {
    let lr = (lambda + RHO).eps();
    let rho = RHO.eps();
    WeylElement::all()
        .into_iter()
        .map(|w| {
            let v = w.act_eps(lr);
            w.sign() * kostant_partition([v[0] - mu[0] - rho[0], v[1] - mu[1] - rho[1]])
        })
        .sum()
}

/// Dominant representative of the `W`-orbit of an epsilon vector.
pub fn dominant_eps(v: [i64; 2]) -> [i64; 2] {
    let (x, y) = (v[0].abs(), v[1].abs());
    if x >= y {
        [x, y]
    } else {
        [y, x]
    }
}

/// Size of the `W`-orbit of an epsilon vector.
pub fn orbit_size(v: [i64; 2]) -> u64 {
    let [x, y] = dominant_eps(v);
    match (x, y) {
        (0, 0) => 1,
        (_, 0) => 4,
        (x, y) if x == y => 4,
        _ => 8,
    }
}

/// Whether `mu` lies in the convex hull of `W·lambda` (both epsilon).
pub fn in_weyl_hull(mu: [i64; 2], lambda: [i64; 2]) -> bool {
    let m = dominant_eps(mu);
    let l = dominant_eps(lambda);
    let d0 = l[0] - m[0];
    let d1 = l[1] - m[1];
    d0 >= 0 && d0 + d1 >= 0
}

/// Whether `v` lies in the root lattice `{(m, n) : m + n even}`.
pub fn in_root_lattice(v: [i64; 2]) -> bool {
    (v[0] + v[1]).rem_euclid(2) == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bott_examples() {
        assert_eq!(bott_char0(Weight::new(0, 0)), [1, 0, 0, 0, 0]);
        assert_eq!(bott_char0(Weight::new(-2, -2)), [0, 0, 0, 0, 1]);
        assert_eq!(bott_char0(Weight::new(-2, 1)), [0, 1, 0, 0, 0]);
        assert_eq!(bott_char0(Weight::new(-9, 0)), [0, 0, 0, 56, 0]);
        assert_eq!(bott_char0(Weight::new(3, -3)), [0; 5]);
        assert_eq!(bott_char0(Weight::new(5, -5)), [0, 0, 16, 0, 0]);
        for a in -6..6 {
            for b in -6..6 {
                let l = Weight::new(a, b);
                let h = bott_char0(l);
                let alt = h[0] as i64 - h[1] as i64 + h[2] as i64 - h[3] as i64 + h[4] as i64;
                assert_eq!(alt, euler_characteristic(l), "{l}");
            }
        }
    }

    #[test]
    fn epsilon_roundtrip() {
        for a in -5..5 {
            for b in -5..5 {
                let w = Weight::new(a, b);
                assert_eq!(Weight::from_eps(w.eps()), w);
            }
        }
    }

    #[test]
    fn weyl_group_lengths() {
        let mut lens: Vec<u32> = WeylElement::all().iter().map(|w| w.length()).collect();
        lens.sort();
        assert_eq!(lens, vec![0, 1, 1, 2, 2, 3, 3, 4]);
        assert_eq!(WeylElement::S_ALPHA.length(), 1);
        assert_eq!(WeylElement::S_BETA.length(), 1);
        assert_eq!(WeylElement::LONGEST.length(), 4);
        for w in WeylElement::all() {
            assert_eq!(w.sign(), if w.length() % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn chi_examples() {
        assert_eq!(euler_characteristic(Weight::new(0, 0)), 1);
        assert_eq!(euler_characteristic(Weight::new(1, 0)), 4);
        assert_eq!(euler_characteristic(Weight::new(2, 3)), 154);
        assert_eq!(euler_characteristic(Weight::new(3, -3)), 0);
        assert_eq!(euler_characteristic(Weight::new(-2, 1)), -1);
        assert_eq!(euler_characteristic(Weight::new(0, 1)), 5);
        assert_eq!(euler_characteristic(Weight::new(3, 0)), 20);
    }

    #[test]
    fn dot_action_examples() {
        assert_eq!(dot_action(WeylElement::IDENTITY, Weight::new(2, 3)), Weight::new(2, 3));
        assert_eq!(dot_action(WeylElement::S_ALPHA, Weight::new(-2, 1)), Weight::ZERO);
        assert_eq!(dot_action(WeylElement::LONGEST, Weight::ZERO), Weight::new(-2, -2));
        assert_eq!(
            dot_action(WeylElement::LONGEST, Weight::ZERO),
            LineBundleName::Canonical.to_weight()
        );
    }

    #[test]
    fn serre_dual_examples() {
        assert_eq!(serre_dual(Weight::ZERO), Weight::new(-2, -2));
        assert_eq!(serre_dual(Weight::new(3, -3)), Weight::new(-5, 1));
        for q in [3i64, 5, 9] {
            assert_eq!(serre_dual(Weight::new(q - 2, -2)), Weight::new(-q, 0));
        }
    }

    #[test]
    fn kempf_examples() {
        assert_eq!(kempf_predicts(Weight::new(3, 0)), Some([20, 0, 0, 0, 0]));
        assert_eq!(kempf_predicts(Weight::new(1, -1)), None);
        assert_eq!(kempf_predicts(Weight::ZERO), Some([1, 0, 0, 0, 0]));
    }

    #[test]
    fn dictionary() {
        assert_eq!(LineBundleName::RelPi(-3).to_weight(), Weight::new(3, -3));
        assert_eq!(LineBundleName::Canonical.to_weight(), Weight::new(-2, -2));
        let lhs = LineBundleName::Product(vec![LineBundleName::QStar(5)]).to_weight();
        let rhs =
            LineBundleName::Product(vec![LineBundleName::RelPi(5), LineBundleName::PiStar(5)])
                .to_weight();
        assert_eq!(lhs, Weight::new(0, 5));
        assert_eq!(lhs, rhs);
        assert_eq!(LineBundleName::RelQ(-1).to_weight(), LineBundleName::PiStar(-1).to_weight());
    }

    #[test]
    fn weight_multiplicities_sum_to_chi() {
        for (a, b) in [(0, 0), (1, 0), (0, 1), (2, 3), (3, -3), (-2, 1), (5, -5), (-4, -3)] {
            let lam = Weight::new(a, b);
            let r = 3 * (a.abs() + b.abs()) + 6;
            let mut total = 0;
            for x in -r..=r {
                for y in -r..=r {
                    total += chi_weight_multiplicity(lam, [x, y]);
                }
            }
            assert_eq!(total, euler_characteristic(lam), "λ = {lam}");
        }
        // natural representation: weights ±ε₁, ±ε₂
        let v = Weight::new(1, 0);
        assert_eq!(chi_weight_multiplicity(v, [1, 0]), 1);
        assert_eq!(chi_weight_multiplicity(v, [0, -1]), 1);
        assert_eq!(chi_weight_multiplicity(v, [0, 0]), 0);
    }

    #[test]
    fn hull_membership() {
        assert!(in_weyl_hull([0, 0], [1, 0]));
        assert!(in_weyl_hull([-1, 0], [1, 0]));
        assert!(!in_weyl_hull([1, 1], [1, 0]));
        assert!(in_weyl_hull([1, 1], [2, 0]));
        assert_eq!(orbit_size([0, 0]), 1);
        assert_eq!(orbit_size([2, 2]), 4);
        assert_eq!(orbit_size([3, 0]), 4);
        assert_eq!(orbit_size([3, 1]), 8);
    }
}
