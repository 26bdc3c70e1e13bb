//! Sheaf expressions on `X`: line bundles, direct sums, twists and
//! kernel-presented bundles, plus the named bundles coming from the two
//! factors `P³` and `Q₃` and the rewrite rules reducing them to the former.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fp, Prime};
use crate::geom::{ChartModel, Point};
use crate::linalg::{self, SparseVec};
use crate::poly::{var::*, MultiDegree, Poly, X_WEIGHTS};
use crate::rootdata::{euler_characteristic, Weight};

/// A twisted line bundle `O(line) ⊗ χ` with `χ` a torus character
/// (epsilon coordinates). Summands of presentations carry characters so that
/// the presentation matrix is torus-equivariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Summand {
    pub line: Weight,
    pub chi: [i64; 2],
}

impl Summand {
    pub fn new(line: Weight, chi: [i64; 2]) -> Self {
        Summand { line, chi }
    }

    pub fn plain(line: Weight) -> Self {
        Summand { line, chi: [0, 0] }
    }

    fn twist(self, w: Weight) -> Self {
        Summand { line: self.line + w, chi: self.chi }
    }

    fn scale(self, q: i64) -> Self {
        Summand { line: self.line.scale(q), chi: [self.chi[0] * q, self.chi[1] * q] }
    }
}

/// `Σ sign·[summand]` in the equivariant Grothendieck group; used both for
/// Euler characteristics and to bound the torus weights of cohomology.
pub type Filtration = Vec<(Summand, i64)>;

/// The kernel of `M : ⊕ source → ⊕ target`, a vector bundle of rank
/// `|source| − rank` when `M` has constant rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KernelMap {
    pub name: String,
    pub source: Vec<Summand>,
    pub target: Vec<Summand>,
    /// `entries[r][c]` maps source `c` to target `r`.
    pub entries: Vec<Vec<Poly>>,
    /// Declared rank of `M` at every point of `X`.
    pub rank: usize,
    /// Equivariant K-class of the kernel as a signed sum of twisted lines
    /// (from a filtration or an exact resolution).
    pub k_class: Filtration,
    /// Degrees of a line-bundle filtration of the restriction to the fibres
    /// of `π : X → P³` (resp. `q : X → Q₃`); decide which covers are valid.
    pub pi_fibre: Vec<i64>,
    pub q_fibre: Vec<i64>,
}

impl KernelMap {
    pub fn bundle_rank(&self) -> usize {
        self.source.len() - self.rank
    }

    /// Every nonzero entry is bihomogeneous of multidegree
    /// `target − source` (with characters: `χ_c − χ_r` is the entry weight).
    pub fn check_homogeneous(&self) -> Result<()> {
        for (r, row) in self.entries.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                let d = e.degree().ok_or_else(|| Error::Model(format!("{}: entry ({r},{c}) not homogeneous", self.name)))?;
                let (s, t) = (self.source[c], self.target[r]);
                let want = MultiDegree {
                    a: t.line.a - s.line.a,
                    b: t.line.b - s.line.b,
                    w: [s.chi[0] - t.chi[0], s.chi[1] - t.chi[1]],
                };
                if d != want {
                    return Err(Error::Model(format!("{}: entry ({r},{c}) has degree {d:?}, expected {want:?}", self.name)));
                }
            }
        }
        Ok(())
    }

    pub fn rank_at(&self, f: &Fp, pt: &Point) -> usize {
        let rows: Vec<SparseVec> = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter_map(|(c, e)| {
                        let v = e.eval(f, pt);
                        (v != 0).then_some((c as u32, v))
                    })
                    .collect()
            })
            .collect();
        linalg::rank(f, rows)
    }

    /// Constant-rank certificate: the matrix has the declared rank at `count`
    /// seeded random points of `X`.
    pub fn certify_rank(&self, p: Prime, count: usize, seed: u64) -> Result<()> {
        let model = ChartModel::new();
        let f = Fp::new(p);
        for pt in model.random_points(p, count, seed) {
            let r = self.rank_at(&f, &pt);
            if r != self.rank {
                return Err(Error::Model(format!(
                    "{}: rank {r} at {} (declared {})",
                    self.name,
                    crate::geom::format_point(&pt),
                    self.rank
                )));
            }
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.k_class.iter().map(|(s, sign)| sign * euler_characteristic(s.line)).sum()
    }

    fn twist(&self, w: Weight) -> KernelMap {
        KernelMap {
            name: self.name.clone(),
            source: self.source.iter().map(|s| s.twist(w)).collect(),
            target: self.target.iter().map(|s| s.twist(w)).collect(),
            entries: self.entries.clone(),
            rank: self.rank,
            k_class: self.k_class.iter().map(|(s, k)| (s.twist(w), *k)).collect(),
            pi_fibre: self.pi_fibre.iter().map(|d| d + w.b).collect(),
            q_fibre: self.q_fibre.iter().map(|d| d + w.a).collect(),
        }
    }

    fn frobenius(&self, p: Prime, n: u32) -> KernelMap {
        let q = p.pow(n);
        let f = Fp::new(p);
        KernelMap {
            name: format!("F{n}*{}", self.name),
            source: self.source.iter().map(|s| s.scale(q)).collect(),
            target: self.target.iter().map(|s| s.scale(q)).collect(),
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e.frobenius(&f, q as u16)).collect())
                .collect(),
            rank: self.rank,
            k_class: self.k_class.iter().map(|(s, k)| (s.scale(q), *k)).collect(),
            pi_fibre: self.pi_fibre.iter().map(|d| d * q).collect(),
            q_fibre: self.q_fibre.iter().map(|d| d * q).collect(),
        }
    }

    fn canonical(&self) -> String {
        let sums = |v: &[Summand]| {
            v.iter()
                .map(|s| format!("{}{:?}", s.line, s.chi))
                .collect::<Vec<_>>()
                .join(",")
        };
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        format!("ker[{};{};{};{}]", self.rank, sums(&self.source), sums(&self.target), rows.join(";"))
    }
}

/// Named bundles appearing in the argument, resolved by `rewrite`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Named {
    /// The spinor (tautological rank-2) bundle `U₂` on `Q₃`, pulled back.
    U2,
    /// `U₂^*`.
    U2Dual,
    /// `Fⁿ*U₂`.
    FrobU2(u32),
    /// `Fⁿ*U₂^*`.
    FrobU2Dual(u32),
    /// `S^k U₂^*`, computed on `X` through `π*O_{P³}(k)` (needs `k ≥ 0`).
    SymU2Dual(i64),
    /// `Ω¹_{P⁴}(1)|_{Q₃}`.
    Omega1,
    /// `Ω²_{P⁴}(2)|_{Q₃}`.
    Omega2,
    /// `Fⁿ*(Ω¹_{P⁴}(1)|_{Q₃})`.
    FrobOmega1(u32),
    /// `Fⁿ*(Ω²_{P⁴}(2)|_{Q₃})`.
    FrobOmega2(u32),
    /// The tangent bundle of `Q₃`.
    TangentQ3,
    /// Symmetric or divided powers of presented bundles — not supported.
    PowerOfKernel(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SheafExpr {
    Line(Weight),
    Sum(Vec<SheafExpr>),
    Twist(Box<SheafExpr>, Weight),
    Kernel(KernelMap),
    /// Tensor product; after rewriting at most one factor may be a kernel.
    Tensor(Vec<SheafExpr>),
    Named(Named),
}

/// A fully rewritten summand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Atom {
    Line(Weight),
    Kernel(KernelMap),
}

impl Atom {
    pub fn euler_characteristic(&self) -> i64 {
        match self {
            Atom::Line(w) => euler_characteristic(*w),
            Atom::Kernel(k) => k.euler_characteristic(),
        }
    }

    pub fn k_class(&self) -> Filtration {
        match self {
            Atom::Line(w) => vec![(Summand::plain(*w), 1)],
            Atom::Kernel(k) => k.k_class.clone(),
        }
    }

    pub fn canonical(&self) -> String {
        match self {
            Atom::Line(w) => format!("O{w}"),
            Atom::Kernel(k) => k.canonical(),
        }
    }
}

fn p_var(j: usize, k: usize) -> usize {
    crate::poly::P_PAIRS
        .iter()
        .position(|&(a, b)| (a, b) == (j, k))
        .map(|i| 4 + i)
        .expect("j < k")
}

fn x_wt(c: usize) -> [i64; 2] {
    X_WEIGHTS[c]
}

fn neg(v: [i64; 2]) -> [i64; 2] {
    [-v[0], -v[1]]
}

fn add(u: [i64; 2], v: [i64; 2]) -> [i64; 2] {
    [u[0] + v[0], u[1] + v[1]]
}

/// `q*U₂` as the kernel of `V ⊗ O → ∧³V ⊗ O(0,1)`, `v ↦ v ∧ π`.
pub fn spinor_pullback() -> SheafExpr {
    SheafExpr::Kernel(spinor_kernel())
}

pub fn spinor_kernel() -> KernelMap {
    // e_c has torus weight −wt(x_c)
    let source: Vec<Summand> = (0..4).map(|c| Summand::new(Weight::ZERO, neg(x_wt(c)))).collect();
    let triples = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
    let mut entries = Vec::new();
    let mut target = Vec::new();
    for &(j, k, l) in &triples {
        // (v ∧ π)_{jkl} = v_j p_kl − v_k p_jl + v_l p_jk
        let mut row = vec![Poly::zero(); 4];
        row[j] = Poly::var(p_var(k, l));
        row[k] = Poly::var(p_var(j, l)).neg();
        row[l] = Poly::var(p_var(j, k));
        entries.push(row);
        let chi = neg(add(add(x_wt(j), x_wt(k)), x_wt(l)));
        target.push(Summand::new(Weight::new(0, 1), chi));
    }
    KernelMap {
        name: "U2".into(),
        source,
        target,
        entries,
        rank: 2,
        // 0 → O(−1,0) → q*U₂ → O(1,−1) → 0
        k_class: vec![(Summand::plain(Weight::new(-1, 0)), 1), (Summand::plain(Weight::new(1, -1)), 1)],
        pi_fibre: vec![0, -1],
        q_fibre: vec![-1, 1],
    }
}

/// Coordinates `z₁..z₅` of `W = {p13 + p24 = 0} ⊂ ∧²V`, spanning `W*`.
const W_COORDS: [usize; 5] = [P12, P13, P14, P23, P34];

fn z_wt(j: usize) -> [i64; 2] {
    MultiDegree::of_var(W_COORDS[j]).w
}

/// `Ω¹_{P⁴}(1)|_{Q₃}` as the kernel of `W* ⊗ O → O(0,1)`, `e_j ↦ z_j`.
pub fn omega1_kernel() -> KernelMap {
    let source: Vec<Summand> = (0..5).map(|j| Summand::new(Weight::ZERO, z_wt(j))).collect();
    let mut k_class: Filtration = source.iter().map(|s| (*s, 1)).collect();
    k_class.push((Summand::plain(Weight::new(0, 1)), -1));
    KernelMap {
        name: "Omega1(1)".into(),
        source,
        target: vec![Summand::plain(Weight::new(0, 1))],
        entries: vec![W_COORDS.iter().map(|&v| Poly::var(v)).collect()],
        rank: 1,
        k_class,
        // π-fibres map to lines of Q₃, where Ω¹_{P⁴}(1) = O(−1) ⊕ O³
        pi_fibre: vec![-1, 0, 0, 0],
        q_fibre: vec![0; 4],
    }
}

/// `Ω²_{P⁴}(2)|_{Q₃}` as the kernel of the Koszul map
/// `∧²W* ⊗ O → W* ⊗ O(0,1)`, `e_j ∧ e_k ↦ z_j e_k − z_k e_j`.
pub fn omega2_kernel() -> KernelMap {
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|j| ((j + 1)..5).map(move |k| (j, k))).collect();
    let source: Vec<Summand> = pairs.iter().map(|&(j, k)| Summand::new(Weight::ZERO, add(z_wt(j), z_wt(k)))).collect();
    let target: Vec<Summand> = (0..5).map(|k| Summand::new(Weight::new(0, 1), z_wt(k))).collect();
    let mut entries = vec![vec![Poly::zero(); pairs.len()]; 5];
    for (c, &(j, k)) in pairs.iter().enumerate() {
        entries[k][c] = Poly::var(W_COORDS[j]);
        entries[j][c] = Poly::var(W_COORDS[k]).neg();
    }
    // exact: 0 → Ω²(2) → ∧²W*⊗O → W*⊗O(0,1) → O(0,2) → 0
    let mut k_class: Filtration = source.iter().map(|s| (*s, 1)).collect();
    k_class.extend(target.iter().map(|s| (*s, -1)));
    k_class.push((Summand::plain(Weight::new(0, 2)), 1));
    KernelMap {
        name: "Omega2(2)".into(),
        source,
        target,
        entries,
        rank: 4,
        k_class,
        // ∧²(O(−1) ⊕ O³) on a line
        pi_fibre: vec![-1, -1, -1, 0, 0, 0],
        q_fibre: vec![0; 6],
    }
}

/// `Fⁿ*` of an expression built from lines, sums, twists, tensors and kernels.
pub fn frobenius_pull(e: &SheafExpr, n: u32, p: Prime) -> Result<SheafExpr> {
    if n == 0 {
        return Ok(e.clone());
    }
    let q = p.pow(n);
    Ok(match e {
        SheafExpr::Line(w) => SheafExpr::Line(w.scale(q)),
        SheafExpr::Sum(v) => SheafExpr::Sum(v.iter().map(|x| frobenius_pull(x, n, p)).collect::<Result<_>>()?),
        SheafExpr::Tensor(v) => SheafExpr::Tensor(v.iter().map(|x| frobenius_pull(x, n, p)).collect::<Result<_>>()?),
        SheafExpr::Twist(x, w) => SheafExpr::Twist(Box::new(frobenius_pull(x, n, p)?), w.scale(q)),
        SheafExpr::Kernel(k) => SheafExpr::Kernel(k.frobenius(p, n)),
        SheafExpr::Named(name) => {
            return Err(Error::Unsupported(format!("Frobenius pullback of unresolved {name:?}; rewrite first")))
        }
    })
}

/// Result of `rewrite`: the expression in atoms, and the identifications of
/// cohomology groups on the factors that were used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rewritten {
    pub expr: SheafExpr,
    pub markers: Vec<String>,
}

/// Resolves named bundles into lines and kernels.
pub fn rewrite(e: &SheafExpr, p: Prime) -> Result<Rewritten> {
    let mut markers = Vec::new();
    let expr = rewrite_inner(e, p, &mut markers)?;
    markers.sort();
    markers.dedup();
    Ok(Rewritten { expr, markers })
}

fn rewrite_inner(e: &SheafExpr, p: Prime, markers: &mut Vec<String>) -> Result<SheafExpr> {
    Ok(match e {
        SheafExpr::Line(_) | SheafExpr::Kernel(_) => e.clone(),
        SheafExpr::Sum(v) => SheafExpr::Sum(v.iter().map(|x| rewrite_inner(x, p, markers)).collect::<Result<_>>()?),
        SheafExpr::Tensor(v) => SheafExpr::Tensor(v.iter().map(|x| rewrite_inner(x, p, markers)).collect::<Result<_>>()?),
        SheafExpr::Twist(x, w) => SheafExpr::Twist(Box::new(rewrite_inner(x, p, markers)?), *w),
        SheafExpr::Named(n) => match n {
            Named::U2 => {
                markers.push("H(Q3, E) = H(X, q*E)".into());
                spinor_pullback()
            }
            Named::U2Dual => {
                markers.push("U2* = U2 (x) O_Q(1) (det U2 = O_Q(-1))".into());
                markers.push("H(Q3, E) = H(X, q*E)".into());
                SheafExpr::Twist(Box::new(spinor_pullback()), Weight::new(0, 1))
            }
            Named::FrobU2(n) => {
                markers.push("H(Q3, E) = H(X, q*E)".into());
                frobenius_pull(&spinor_pullback(), *n, p)?
            }
            Named::FrobU2Dual(n) => {
                markers.push("U2* = U2 (x) O_Q(1) (det U2 = O_Q(-1))".into());
                markers.push("H(Q3, E) = H(X, q*E)".into());
                let q = p.pow(*n);
                SheafExpr::Twist(Box::new(frobenius_pull(&spinor_pullback(), *n, p)?), Weight::new(0, q))
            }
            Named::SymU2Dual(k) => {
                if *k < 0 {
                    return Err(Error::Unsupported(format!("S^{k} U2* with negative k")));
                }
                markers.push("S^k U2* = q_* pi*O_P3(k)".into());
                SheafExpr::Line(Weight::new(*k, 0))
            }
            Named::Omega1 => {
                markers.push("H(Q3, E) = H(X, q*E)".into());
                SheafExpr::Kernel(omega1_kernel())
            }
            Named::Omega2 => {
                markers.push("H(Q3, E) = H(X, q*E)".into());
                SheafExpr::Kernel(omega2_kernel())
            }
            Named::FrobOmega1(n) => {
                markers.push("H(Q3, E) = H(X, q*E)".into());
                frobenius_pull(&SheafExpr::Kernel(omega1_kernel()), *n, p)?
            }
            Named::FrobOmega2(n) => {
                markers.push("H(Q3, E) = H(X, q*E)".into());
                frobenius_pull(&SheafExpr::Kernel(omega2_kernel()), *n, p)?
            }
            Named::TangentQ3 => {
                markers.push("T_Q3 = S^2 U2* (p odd)".into());
                markers.push("S^k U2* = q_* pi*O_P3(k)".into());
                SheafExpr::Line(Weight::new(2, 0))
            }
            Named::PowerOfKernel(what) => {
                return Err(Error::Unsupported(format!("{what}: symmetric/divided powers of presented bundles")))
            }
        },
    })
}

impl SheafExpr {
    pub fn line(a: i64, b: i64) -> Self {
        SheafExpr::Line(Weight::new(a, b))
    }

    pub fn twist(self, w: Weight) -> Self {
        SheafExpr::Twist(Box::new(self), w)
    }

    /// Flattens a rewritten expression into a direct sum of atoms, with all
    /// twists absorbed. Fails on unresolved named bundles and on tensor
    /// products of two presented bundles.
    pub fn atoms(&self) -> Result<Vec<Atom>> {
        match self {
            SheafExpr::Line(w) => Ok(vec![Atom::Line(*w)]),
            SheafExpr::Kernel(k) => {
                k.check_homogeneous()?;
                Ok(vec![Atom::Kernel(k.clone())])
            }
            SheafExpr::Sum(v) => {
                let mut out = Vec::new();
                for x in v {
                    out.extend(x.atoms()?);
                }
                Ok(out)
            }
            SheafExpr::Twist(x, w) => Ok(x.atoms()?.into_iter().map(|a| twist_atom(a, *w)).collect()),
            SheafExpr::Tensor(v) => {
                // distribute over sums; lines act as twists
                let mut acc: Vec<Atom> = vec![Atom::Line(Weight::ZERO)];
                for x in v {
                    let rhs = x.atoms()?;
                    let mut next = Vec::new();
                    for a in &acc {
                        for b in &rhs {
                            next.push(tensor_atoms(a, b)?);
                        }
                    }
                    acc = next;
                }
                Ok(acc)
            }
            SheafExpr::Named(n) => Err(Error::Unsupported(format!("unresolved named bundle {n:?}"))),
        }
    }

    /// Deterministic serialization of the normalized form (sorted sums,
    /// twists absorbed), suitable as a cache key.
    pub fn canonical(&self) -> Result<String> {
        let mut parts: Vec<String> = self.atoms()?.iter().map(|a| a.canonical()).collect();
        parts.sort();
        Ok(parts.join(" + "))
    }

    pub fn euler_characteristic(&self) -> Result<i64> {
        Ok(self.atoms()?.iter().map(|a| a.euler_characteristic()).sum())
    }
}

fn twist_atom(a: Atom, w: Weight) -> Atom {
    match a {
        Atom::Line(l) => Atom::Line(l + w),
        Atom::Kernel(k) => Atom::Kernel(k.twist(w)),
    }
}

fn tensor_atoms(a: &Atom, b: &Atom) -> Result<Atom> {
    match (a, b) {
        (Atom::Line(l), x) | (x, Atom::Line(l)) => Ok(twist_atom(x.clone(), *l)),
        (Atom::Kernel(k1), Atom::Kernel(k2)) => {
            Err(Error::Unsupported(format!("tensor product of presented bundles {} and {}", k1.name, k2.name)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    #[test]
    fn presentations_are_homogeneous() {
        spinor_kernel().check_homogeneous().unwrap();
        omega1_kernel().check_homogeneous().unwrap();
        omega2_kernel().check_homogeneous().unwrap();
        spinor_kernel().frobenius(prime(3), 1).check_homogeneous().unwrap();
    }

    #[test]
    fn spinor_rank_two_at_base_point() {
        let k = spinor_kernel();
        let f = Fp::new(prime(3));
        let base = crate::geom::Chart { line: 1, plane: (1, 2) }.point();
        assert_eq!(k.rank_at(&f, &base), 2);
        assert_eq!(k.bundle_rank(), 2);
        assert_eq!(k.euler_characteristic(), 0);
    }

    #[test]
    fn rank_certificates() {
        for p in [3, 5] {
            spinor_kernel().certify_rank(prime(p), 20, 11).unwrap();
            omega1_kernel().certify_rank(prime(p), 20, 11).unwrap();
            omega2_kernel().certify_rank(prime(p), 20, 11).unwrap();
            spinor_kernel().frobenius(prime(p), 1).certify_rank(prime(p), 20, 11).unwrap();
        }
    }

    #[test]
    fn frobenius_scales_lines() {
        let e = frobenius_pull(&SheafExpr::line(1, -1), 1, prime(3)).unwrap();
        assert_eq!(e, SheafExpr::line(3, -3));
        assert_eq!(frobenius_pull(&spinor_pullback(), 0, prime(3)).unwrap(), spinor_pullback());
    }

    #[test]
    fn rewrite_named_bundles() {
        let p = prime(5);
        let r = rewrite(&SheafExpr::Named(Named::SymU2Dual(5)), p).unwrap();
        assert_eq!(r.expr, SheafExpr::line(5, 0));
        let e = SheafExpr::Named(Named::SymU2Dual(3)).twist(Weight::new(0, -2));
        let atoms = rewrite(&e, p).unwrap().expr.atoms().unwrap();
        assert_eq!(atoms, vec![Atom::Line(Weight::new(3, -2))]);
        assert!(matches!(rewrite(&SheafExpr::Named(Named::SymU2Dual(-1)), p), Err(Error::Unsupported(_))));
        assert!(rewrite(&SheafExpr::Named(Named::PowerOfKernel("S^2 FU2".into())), p).is_err());
    }

    #[test]
    fn canonical_form_is_order_independent() {
        let a = SheafExpr::Sum(vec![SheafExpr::line(1, 0), spinor_pullback().twist(Weight::new(0, 1))]);
        let b = SheafExpr::Sum(vec![SheafExpr::Tensor(vec![SheafExpr::line(0, 1), spinor_pullback()]), SheafExpr::line(1, 0)]);
        assert_eq!(a.canonical().unwrap(), b.canonical().unwrap());
    }
}
