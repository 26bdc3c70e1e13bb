//! The flag variety `X = {(ℓ, Π) : ℓ ⊂ Π Lagrangian} ⊂ P³ × P⁵`: defining
//! equations, torus-fixed charts, point counts and smoothness spot checks.
//!
//! The symplectic form is `ω = x₁∧x₃ + x₂∧x₄`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fp, Prime};
use crate::linalg::{self, SparseVec};
use crate::poly::{var::*, Monomial, MultiDegree, Poly, NVARS, P_PAIRS, VAR_NAMES};
use crate::ring::CoordinateRing;
use crate::rootdata::{Weight, WeylElement};

/// A point of `P³ × P⁵` given by representatives, coordinates in variable order.
pub type Point = [u32; NVARS];

fn term(c: i64, vars: &[usize]) -> (Monomial, i64) {
    let mut e = [0u16; NVARS];
    for &v in vars {
        e[v] += 1;
    }
    (Monomial(e), c)
}

/// The multihomogeneous coordinate model of `X`.
#[derive(Debug, Clone)]
pub struct ChartModel {
    generators: Vec<(&'static str, Poly)>,
}

impl Default for ChartModel {
    fn default() -> Self {
        Self::new()
    }
}

impl ChartModel {
    pub fn new() -> Self {
        let g = |ts: Vec<(Monomial, i64)>| Poly::from_terms(ts);
        let generators = vec![
            ("L", g(vec![term(1, &[P13]), term(1, &[P24])])),
            ("P", g(vec![term(1, &[P12, P34]), term(-1, &[P13, P24]), term(1, &[P14, P23])])),
            ("I1", g(vec![term(1, &[X1, P23]), term(-1, &[X2, P13]), term(1, &[X3, P12])])),
            ("I2", g(vec![term(1, &[X1, P24]), term(-1, &[X2, P14]), term(1, &[X4, P12])])),
            ("I3", g(vec![term(1, &[X1, P34]), term(-1, &[X3, P14]), term(1, &[X4, P13])])),
            ("I4", g(vec![term(1, &[X2, P34]), term(-1, &[X3, P24]), term(1, &[X4, P23])])),
        ];
        ChartModel { generators }
    }

    /// `L`, `P`, `I₁..I₄`, with names.
    pub fn generators(&self) -> &[(&'static str, Poly)] {
        &self.generators
    }

    pub fn variable_names(&self) -> &'static [&'static str; NVARS] {
        &VAR_NAMES
    }

    pub fn contains(&self, f: &Fp, pt: &Point) -> bool {
        let x_zero = pt[..4].iter().all(|&c| c == 0);
        let p_zero = pt[4..].iter().all(|&c| c == 0);
        !x_zero && !p_zero && self.generators.iter().all(|(_, g)| g.eval(f, pt) == 0)
    }

    /// Rank of the Jacobian of the six generators at `pt`, in the affine chart
    /// `x_i = 1, p_jk = 1` of `P³ × P⁵` given by the first nonzero coordinates.
    pub fn jacobian_rank_at(&self, p: Prime, pt: &Point) -> Result<usize> {
        let f = Fp::new(p);
        if !self.contains(&f, pt) {
            return Err(Error::NotOnVariety(format_point(pt)));
        }
        let i = (0..4).find(|&v| pt[v] != 0).expect("x part nonzero");
        let j = (4..NVARS).find(|&v| pt[v] != 0).expect("p part nonzero");
        // normalize the representative so the chart coordinates are 1
        let (ix, ip) = (f.inv(pt[i]), f.inv(pt[j]));
        let mut q = *pt;
        for v in 0..4 {
            q[v] = f.mul(q[v], ix);
        }
        for v in 4..NVARS {
            q[v] = f.mul(q[v], ip);
        }
        let rows: Vec<SparseVec> = self
            .generators
            .iter()
            .map(|(_, g)| {
                (0..NVARS)
                    .filter(|&v| v != i && v != j)
                    .enumerate()
                    .filter_map(|(col, v)| {
                        let d = g.derivative(v).eval(&f, &q);
                        (d != 0).then_some((col as u32, d))
                    })
                    .collect()
            })
            .collect();
        Ok(linalg::rank(&f, rows))
    }

    /// Number of F_p-points of `X`, by exhaustive projective enumeration.
    pub fn point_count(&self, p: Prime) -> Result<u64> {
        if p.get() > 7 {
            return Err(Error::PointCountInfeasible(p.get()));
        }
        Ok(self.points(p).len() as u64)
    }

    /// All F_p-points of `X` with normalized representatives (first nonzero
    /// coordinate of each factor equal to 1). Only sensible for tiny `p`.
    pub fn points(&self, p: Prime) -> Vec<Point> {
        let f = Fp::new(p);
        let lines = projective_points(p.get(), 4);
        let planes: Vec<Vec<u32>> = projective_points(p.get(), 6)
            .into_iter()
            .filter(|pl| {
                let mut pt = [0u32; NVARS];
                pt[4..].copy_from_slice(pl);
                // the linear relation and the Plücker quadric involve p only
                self.generators[..2].iter().all(|(_, g)| g.eval(&f, &pt) == 0)
            })
            .collect();
        let mut out = Vec::new();
        for pl in &planes {
            for l in &lines {
                let mut pt = [0u32; NVARS];
                pt[..4].copy_from_slice(l);
                pt[4..].copy_from_slice(pl);
                if self.generators[2..].iter().all(|(_, g)| g.eval(&f, &pt) == 0) {
                    out.push(pt);
                }
            }
        }
        out
    }

    /// `count` random F_p-points of `X`: a random nonzero `v`, then a random
    /// `w` with `ω(v, w) = 0` independent of `v`; the flag is `⟨v⟩ ⊂ ⟨v, w⟩`.
    pub fn random_points(&self, p: Prime, count: usize, seed: u64) -> Vec<Point> {
        let f = Fp::new(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count);
        let rand_vec = |rng: &mut ChaCha8Rng| -> [u32; 4] { std::array::from_fn(|_| rng.gen_range(0..p.get())) };
        while out.len() < count {
            let v = rand_vec(&mut rng);
            if v.iter().all(|&c| c == 0) {
                continue;
            }
            let w = rand_vec(&mut rng);
            if symplectic_form(&f, &v, &w) != 0 {
                continue;
            }
            let mut pt = [0u32; NVARS];
            pt[..4].copy_from_slice(&v);
            for (idx, &(j, k)) in P_PAIRS.iter().enumerate() {
                pt[4 + idx] = f.sub(f.mul(v[j], w[k]), f.mul(v[k], w[j]));
            }
            if pt[4..].iter().all(|&c| c == 0) {
                continue; // w dependent on v
            }
            out.push(pt);
        }
        out
    }
}

/// `ω(v, w) = v₁w₃ − v₃w₁ + v₂w₄ − v₄w₂`.
pub fn symplectic_form(f: &Fp, v: &[u32; 4], w: &[u32; 4]) -> u32 {
    let a = f.sub(f.mul(v[0], w[2]), f.mul(v[2], w[0]));
    let b = f.sub(f.mul(v[1], w[3]), f.mul(v[3], w[1]));
    f.add(a, b)
}

/// Normalized representatives of the points of `P^{n−1}(F_p)`.
fn projective_points(p: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let total = (p as u64).pow(free as u32);
        for mut code in 0..total {
            let mut v = vec![0u32; n];
            v[lead] = 1;
            for c in v.iter_mut().skip(lead + 1) {
                *c = (code % p as u64) as u32;
                code /= p as u64;
            }
            out.push(v);
        }
    }
    out
}

pub fn format_point(pt: &Point) -> String {
    let x: Vec<String> = pt[..4].iter().map(|c| c.to_string()).collect();
    let p: Vec<String> = pt[4..].iter().map(|c| c.to_string()).collect();
    format!("[{}] x [{}]", x.join(":"), p.join(":"))
}

/// A torus-fixed point `(⟨e_i⟩ ⊂ ⟨e_j, e_k⟩)` and its affine neighbourhood
/// `{x_i·p_jk ≠ 0}`. Indices are 1-based as in the usual notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chart {
    pub line: u8,
    pub plane: (u8, u8),
}

/// The Lagrangian coordinate planes.
pub const LAGRANGIAN_PLANES: [(u8, u8); 4] = [(1, 2), (1, 4), (2, 3), (3, 4)];

impl Chart {
    pub fn plane_var(&self) -> usize {
        let (j, k) = self.plane;
        let idx = P_PAIRS
            .iter()
            .position(|&(a, b)| (a + 1, b + 1) == (j as usize, k as usize))
            .expect("plane is a coordinate pair");
        4 + idx
    }

    /// The inverted monomial `x_i·p_jk`.
    pub fn monomial(&self) -> Monomial {
        Monomial::var(self.line as usize - 1).mul(&Monomial::var(self.plane_var()))
    }

    /// The fixed point as a point of `P³ × P⁵`.
    pub fn point(&self) -> Point {
        let mut pt = [0u32; NVARS];
        pt[self.line as usize - 1] = 1;
        pt[self.plane_var()] = 1;
        pt
    }

    /// The Weyl group element `w` with `w(ε₁)`, `w(ε₂)` the torus weights of
    /// the coordinates `x_i` and `x_j` cutting out the line and the plane.
    pub fn weyl_element(&self) -> WeylElement {
        let wt = |i: u8| crate::poly::X_WEIGHTS[i as usize - 1];
        let other = if self.plane.0 == self.line { self.plane.1 } else { self.plane.0 };
        let (l, o) = (wt(self.line), wt(other));
        WeylElement::all()
            .into_iter()
            .find(|w| w.act_eps([1, 0]) == l && w.act_eps([0, 1]) == o)
            .expect("coordinate Lagrangian flags are a W-torsor")
    }
}

impl std::fmt::Display for Chart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}{})", self.line, self.plane.0, self.plane.1)
    }
}

/// The eight torus-fixed points, in a fixed order.
pub fn fixed_points() -> Vec<Chart> {
    let mut out = Vec::with_capacity(8);
    for plane in LAGRANGIAN_PLANES {
        for line in [plane.0, plane.1] {
            out.push(Chart { line, plane });
        }
    }
    out
}

/// Sections of `O(degree)` over the intersection of the chart opens, with
/// poles of order at most `t` along every inverted coordinate: the space
/// `(S/I)_{degree + t·deg(m)} / m^t` with `m` the product of the inverted
/// variables. Grows with `t`; its union over `t` is the full section space.
#[derive(Debug, Clone)]
pub struct SectionSpace {
    pub degree: Weight,
    pub charts: Vec<Chart>,
    pub t: u32,
    /// Squarefree product of the variables inverted on the intersection.
    pub inverted: Monomial,
    /// Numerators; the section is `numerator / inverted^t`.
    pub basis: Vec<Monomial>,
}

impl SectionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn section_space(
    degree: Weight,
    charts: &[Chart],
    t: u32,
    p: Prime,
    max_basis: usize,
) -> Result<SectionSpace> {
    if charts.is_empty() {
        return Err(Error::Model("section space over an empty chart set".into()));
    }
    let mut inv = [0u16; NVARS];
    for c in charts {
        for (v, &e) in c.monomial().0.iter().enumerate() {
            inv[v] = inv[v].max(e);
        }
    }
    let inverted = Monomial(inv);
    let shift = inverted.pow(t as u16).degree();
    let (a, b) = (degree.a + shift.a, degree.b + shift.b);
    if a < 0 || b < 0 {
        return Ok(SectionSpace { degree, charts: charts.to_vec(), t, inverted, basis: Vec::new() });
    }
    let expected = crate::rootdata::euler_characteristic(Weight::new(a, b)) as usize;
    if expected > max_basis {
        return Err(Error::Resource(format!(
            "section space of O{degree} at t = {t} needs {expected} basis monomials (budget {max_basis})"
        )));
    }
    let ring = CoordinateRing::new(p);
    let mut basis = Vec::with_capacity(expected);
    let r = a + 2 * b;
    for w0 in -r..=r {
        for w1 in -r..=r {
            basis.extend(ring.standard_basis(MultiDegree { a, b, w: [w0, w1] }));
        }
    }
    basis.sort();
    Ok(SectionSpace { degree, charts: charts.to_vec(), t, inverted, basis })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn eight_fixed_points() {
        let fp = fixed_points();
        assert_eq!(fp.len(), 8);
        assert!(fp.contains(&Chart { line: 1, plane: (1, 2) }));
        assert!(fp.contains(&Chart { line: 4, plane: (3, 4) }));
        assert!(!fp.iter().any(|c| c.plane == (1, 3)));
        let f = Fp::new(prime(3));
        let model = ChartModel::new();
        for c in &fp {
            assert!(model.contains(&f, &c.point()), "{c}");
        }
    }

    #[test]
    fn fixed_points_biject_with_weyl_group() {
        let mut ws: Vec<_> = fixed_points().iter().map(|c| c.weyl_element()).collect();
        ws.dedup();
        let all = WeylElement::all();
        assert_eq!(ws.len(), 8);
        assert!(all.iter().all(|w| ws.contains(w)));
        assert_eq!(Chart { line: 1, plane: (1, 2) }.weyl_element(), WeylElement::IDENTITY);
    }

    #[test]
    fn jacobian_at_fixed_point() {
        let model = ChartModel::new();
        let c = Chart { line: 1, plane: (1, 2) };
        assert_eq!(model.jacobian_rank_at(prime(3), &c.point()).unwrap(), 4);
        let mut off = c.point();
        off[X3] = 1; // x = e1 + e3 is not in the plane e1∧e2
        assert!(matches!(model.jacobian_rank_at(prime(3), &off), Err(Error::NotOnVariety(_))));
    }

    #[test]
    fn random_points_lie_on_x() {
        let model = ChartModel::new();
        let f = Fp::new(prime(5));
        for pt in model.random_points(prime(5), 20, 1) {
            assert!(model.contains(&f, &pt));
            assert_eq!(model.jacobian_rank_at(prime(5), &pt).unwrap(), 4);
        }
    }

    #[test]
    fn section_space_of_constants() {
        let s = section_space(Weight::ZERO, &fixed_points(), 0, prime(3), 1000).unwrap();
        assert_eq!(s.dim(), 1);
        let one = section_space(Weight::new(1, 0), &fixed_points()[..1], 0, prime(3), 1000).unwrap();
        assert_eq!(one.dim(), 4);
    }
}
