//! Truncated Čech cohomology of line bundles and kernel bundles on `X`.
//!
//! `X` is covered by the products `D(x_i) ∩ D(p_jk)` with `jk` running over
//! the Lagrangian coordinate planes. The Čech complex of this product cover
//! is a double complex; its term over `D(x_I) ∩ D(p_J)` is the localization
//! `(S/I)[1/(x_I p_J)]` in the appropriate degree. Truncating at pole order
//! `T` (numerators over `x_I^T p_J^T`) turns each term into a finite graded
//! piece of `S/I`, and everything splits by torus weight.
//!
//! When every constituent of the sheaf has fibre degree `≥ −1` along one of
//! the two `P¹`-fibrations, that fibration's higher direct images vanish
//! and the cover pulled back from the base suffices (Leray); this is used
//! to keep the complexes small.

use rustc_hash::FxHashMap as HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::{Cache, CacheKey};
use crate::error::{Error, Result};
use crate::field::{Fp, Prime};
use crate::linalg::{collect_sparse, Echelon};
use crate::poly::{var::*, Monomial, MultiDegree};
use crate::ring::{CoordinateRing, Reducer};
use crate::rootdata::{chi_weight_multiplicity, in_root_lattice, in_weyl_hull, orbit_size, serre_dual, Weight};
use crate::sheaf::{Atom, SheafExpr, Summand};

/// Plücker coordinates whose non-vanishing loci cover the quadric.
pub const P_CHART_VARS: [usize; 4] = [P12, P14, P23, P34];
const X_VARS: [usize; 4] = [X1, X2, X3, X4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoverMode {
    /// `{D(x_i)}` only: pulled back from `P³`.
    X,
    /// `{D(p_jk)}` only: pulled back from `Q₃`.
    P,
    /// The full product cover.
    Both,
}

impl CoverMode {
    fn top_level(self) -> usize {
        match self {
            CoverMode::X | CoverMode::P => 3,
            CoverMode::Both => 6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BettiVector {
    pub h: [u64; 5],
    pub chi: i64,
    pub p: u32,
    pub t_used: u32,
    pub stabilized: bool,
}

impl BettiVector {
    pub fn zero(p: Prime) -> Self {
        BettiVector { h: [0; 5], chi: 0, p: p.get(), t_used: 0, stabilized: true }
    }

    pub fn alternating_sum(h: &[u64; 5]) -> i64 {
        h.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
    }

    pub fn vanishes_outside(&self, degrees: &[usize]) -> bool {
        self.h.iter().enumerate().all(|(i, &x)| x == 0 || degrees.contains(&i))
    }

    /// Direct sum.
    pub fn add(&self, o: &BettiVector) -> BettiVector {
        let mut h = self.h;
        for (x, y) in h.iter_mut().zip(o.h.iter()) {
            *x += y;
        }
        BettiVector {
            h,
            chi: self.chi + o.chi,
            p: self.p,
            t_used: self.t_used.max(o.t_used),
            stabilized: self.stabilized && o.stabilized,
        }
    }
}

impl std::fmt::Display for BettiVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let h: Vec<String> = self.h.iter().map(|x| x.to_string()).collect();
        write!(
            f,
            "{}, chi={}, T={}, {}",
            h.join(" "),
            self.chi,
            self.t_used,
            if self.stabilized { "stabilized" } else { "NOT stabilized" }
        )
    }
}

/// Pole orders along the `x`- and `p`-directions of the cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poles {
    pub x: u32,
    pub p: u32,
}

impl Poles {
    pub fn uniform(t: u32) -> Self {
        Poles { x: t, p: t }
    }
}

impl std::fmt::Display for Poles {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.x, self.p)
    }
}

/// Truncation margins tried per torus weight: `t0, t0 + step, …, ≤ t_max`.
/// The pole order in each direction is the largest degree of the sheaf in
/// that direction plus the margin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Schedule {
    pub t0: u32,
    pub step: u32,
    pub t_max: u32,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule { t0: 0, step: 1, t_max: 12 }
    }
}

impl Schedule {
    pub fn resolve(&self) -> (u32, u32) {
        (self.t0, self.t_max.max(self.t0))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EngineOptions {
    pub schedule: Schedule,
    /// Compute every torus weight instead of dominant representatives.
    pub all_weights: bool,
    /// Assert `d∘d = 0` on every assembled complex.
    pub verify_d2: bool,
    /// Force a cover instead of choosing the cheapest valid one.
    pub mode: Option<CoverMode>,
    /// Maximum total basis size of one per-weight complex.
    pub max_basis: usize,
    /// After stabilizing, also build one more pole order and require that
    /// no dimension drops.
    pub confirm: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            schedule: Schedule::default(),
            all_weights: false,
            verify_d2: false,
            mode: None,
            max_basis: 4_000_000,
            confirm: false,
        }
    }
}

/// Per-weight outcome, exposed for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightBetti {
    pub mu: [i64; 2],
    pub multiplicity: u64,
    pub h: [u64; 5],
    pub t_used: u32,
}

pub struct Engine {
    p: Prime,
    ring: CoordinateRing,
    pub options: EngineOptions,
    builds: AtomicU64,
    cache: Option<Cache>,
}

#[derive(Debug, Clone)]
struct Term {
    imask: u8,
    jmask: u8,
    level: usize,
    shift: MultiDegree,
}

fn popcount(m: u8) -> usize {
    m.count_ones() as usize
}

fn terms(mode: CoverMode, t: Poles) -> Vec<Term> {
    let (imasks, jmasks): (Vec<u8>, Vec<u8>) = match mode {
        CoverMode::X => ((1..16).collect(), vec![0]),
        CoverMode::P => (vec![0], (1..16).collect()),
        CoverMode::Both => ((1..16).collect(), (1..16).collect()),
    };
    let offset = match mode {
        CoverMode::Both => 2,
        _ => 1,
    };
    let mut out = Vec::new();
    for &i in &imasks {
        for &j in &jmasks {
            let mut shift = MultiDegree::ZERO;
            for (k, &v) in X_VARS.iter().enumerate() {
                if i & (1 << k) != 0 {
                    shift = shift.add(MultiDegree::of_var(v).scale(t.x as i64));
                }
            }
            for (k, &v) in P_CHART_VARS.iter().enumerate() {
                if j & (1 << k) != 0 {
                    shift = shift.add(MultiDegree::of_var(v).scale(t.p as i64));
                }
            }
            out.push(Term { imask: i, jmask: j, level: popcount(i) + popcount(j) - offset, shift });
        }
    }
    out.sort_by_key(|t| (t.level, t.imask, t.jmask));
    out
}

/// A block of a Čech term: one summand of a presentation over one open.
struct Block {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
}

impl Block {
    fn new(basis: Vec<Monomial>) -> Self {
        let index = basis.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        Block { basis, index }
    }
}

/// The presentation of an atom as `ker(F0 → F1)`; lines have empty `F1`.
struct Presentation<'a> {
    source: Vec<Summand>,
    target: Vec<Summand>,
    entries: Option<&'a Vec<Vec<crate::poly::Poly>>>,
}

impl<'a> Presentation<'a> {
    fn of(atom: &'a Atom) -> Self {
        match atom {
            Atom::Line(w) => Presentation { source: vec![Summand::plain(*w)], target: vec![], entries: None },
            Atom::Kernel(k) => {
                Presentation { source: k.source.clone(), target: k.target.clone(), entries: Some(&k.entries) }
            }
        }
    }
}

/// Fibre degrees of a filtration of the atom along the fibres of `π`
/// (second coordinate) and of `q` (first coordinate).
fn fibre_degrees(atom: &Atom) -> (Vec<i64>, Vec<i64>) {
    match atom {
        Atom::Line(w) => (vec![w.b], vec![w.a]),
        Atom::Kernel(k) => (k.pi_fibre.clone(), k.q_fibre.clone()),
    }
}

/// Covers for which the Čech complex computes cohomology of `X`.
pub fn valid_modes(atom: &Atom) -> Vec<CoverMode> {
    let (pi, q) = fibre_degrees(atom);
    let mut out = Vec::new();
    if !pi.is_empty() && pi.iter().all(|&b| b >= -1) {
        out.push(CoverMode::X);
    }
    if !q.is_empty() && q.iter().all(|&a| a >= -1) {
        out.push(CoverMode::P);
    }
    out.push(CoverMode::Both);
    out
}

/// Pole orders matching the largest degrees of the atom in each direction;
/// the truncation margin is added on top.
fn pole_base(atom: &Atom) -> Poles {
    let mut lines: Vec<Weight> = atom.k_class().iter().map(|(s, _)| s.line).collect();
    if let Atom::Kernel(k) = atom {
        lines.extend(k.source.iter().chain(k.target.iter()).map(|s| s.line));
    }
    Poles {
        x: lines.iter().map(|w| w.a.unsigned_abs() as u32).max().unwrap_or(0),
        p: lines.iter().map(|w| w.b.unsigned_abs() as u32).max().unwrap_or(0),
    }
}

/// Torus weights (epsilon coordinates) where the cohomology can be nonzero.
pub fn weight_support(atom: &Atom, dominant_only: bool) -> Vec<[i64; 2]> {
    let class = atom.k_class();
    let r = class
        .iter()
        .map(|(s, _)| {
            let e = s.line.eps();
            e[0].abs() + e[1].abs() + s.chi[0].abs() + s.chi[1].abs()
        })
        .max()
        .unwrap_or(0);
    let mut out = Vec::new();
    for m0 in -r..=r {
        for m1 in -r..=r {
            if dominant_only && !(m0 >= m1 && m1 >= 0) {
                continue;
            }
            let inside = class.iter().any(|(s, _)| {
                let v = [m0 - s.chi[0], m1 - s.chi[1]];
                let l = s.line.eps();
                in_weyl_hull(v, l) && in_root_lattice([v[0] - l[0], v[1] - l[1]])
            });
            if inside {
                out.push([m0, m1]);
            }
        }
    }
    out
}

/// Multiplicity of `mu` in the equivariant Euler characteristic.
pub fn chi_at_weight(atom: &Atom, mu: [i64; 2]) -> i64 {
    atom.k_class()
        .iter()
        .map(|(s, sign)| sign * chi_weight_multiplicity(s.line, [mu[0] - s.chi[0], mu[1] - s.chi[1]]))
        .sum()
}

impl Engine {
    pub fn new(p: Prime, options: EngineOptions) -> Self {
        Engine { p, ring: CoordinateRing::new(p), options, builds: AtomicU64::new(0), cache: None }
    }

    /// Consults and fills `cache` for every atom computed.
    pub fn with_cache(mut self, cache: Cache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn cache(&self) -> Option<&Cache> {
        self.cache.as_ref()
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    /// Number of per-weight complexes assembled so far.
    pub fn builds(&self) -> u64 {
        self.builds.load(Ordering::Relaxed)
    }

    pub fn choose_mode(&self, atom: &Atom) -> CoverMode {
        if let Some(m) = self.options.mode {
            return m;
        }
        let modes = valid_modes(atom);
        let has = |m| modes.contains(&m);
        match (has(CoverMode::X), has(CoverMode::P)) {
            (true, true) => {
                // fix the smaller of the two degrees; the other one grows with T
                let (pi, q) = fibre_degrees(atom);
                let bmax = pi.iter().map(|x| x.abs()).max().unwrap_or(0);
                let amax = q.iter().map(|x| x.abs()).max().unwrap_or(0);
                if bmax <= amax {
                    CoverMode::X
                } else {
                    CoverMode::P
                }
            }
            (true, false) => CoverMode::X,
            (false, true) => CoverMode::P,
            _ => CoverMode::Both,
        }
    }

    pub fn cohomology_line(&self, lambda: Weight) -> Result<BettiVector> {
        self.cohomology_atom(&Atom::Line(lambda))
    }

    /// Cohomology of a (possibly unrewritten) expression: named bundles are
    /// rewritten first, then atoms are computed and summed.
    pub fn cohomology_expr(&self, e: &SheafExpr) -> Result<BettiVector> {
        let rewritten = crate::sheaf::rewrite(e, self.p)?;
        let mut total = BettiVector::zero(self.p);
        for atom in rewritten.expr.atoms()? {
            total = total.add(&self.cohomology_atom(&atom)?);
        }
        Ok(total)
    }

    pub fn cohomology_atom(&self, atom: &Atom) -> Result<BettiVector> {
        let key = CacheKey::new(atom.canonical(), self.p.get(), self.options.schedule);
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.get(&key)) {
            return Ok(hit);
        }
        let value = self.compute_atom(atom)?;
        if let Some(c) = &self.cache {
            c.put(&key, &value)?;
        }
        Ok(value)
    }

    fn compute_atom(&self, atom: &Atom) -> Result<BettiVector> {
        let per_weight = self.weight_decomposition(atom)?;
        let mut h = [0u64; 5];
        let mut t_used = 0;
        for w in &per_weight {
            for k in 0..5 {
                h[k] += w.h[k] * w.multiplicity;
            }
            t_used = t_used.max(w.t_used);
        }
        let chi = BettiVector::alternating_sum(&h);
        let expected = atom.euler_characteristic();
        if chi != expected {
            return Err(Error::Model(format!(
                "{}: Euler characteristic {chi} of the computed groups differs from {expected}",
                atom.canonical()
            )));
        }
        Ok(BettiVector { h, chi, p: self.p.get(), t_used, stabilized: true })
    }

    /// Stabilized Betti numbers per torus weight.
    pub fn weight_decomposition(&self, atom: &Atom) -> Result<Vec<WeightBetti>> {
        if let Atom::Kernel(k) = atom {
            k.check_homogeneous()?;
        }
        let mode = self.choose_mode(atom);
        let (m0, m_max) = self.options.schedule.resolve();
        let step = self.options.schedule.step.max(1);
        let base = pole_base(atom);
        let weights = weight_support(atom, !self.options.all_weights);
        let mut out: Vec<WeightBetti> = weights
            .par_iter()
            .map(|&mu| self.stabilize_weight(atom, mode, mu, base, (m0, step, m_max)))
            .collect::<Result<_>>()?;
        out.retain(|w| w.h.iter().any(|&x| x > 0));
        Ok(out)
    }

    /// Raises the pole orders `base + m` for `m = m0, m0 + step, …` until two
    /// consecutive results agree and match the Euler characteristic.
    fn stabilize_weight(
        &self,
        atom: &Atom,
        mode: CoverMode,
        mu: [i64; 2],
        base: Poles,
        (m0, step, m_max): (u32, u32, u32),
    ) -> Result<WeightBetti> {
        let expected = chi_at_weight(atom, mu);
        let multiplicity = if self.options.all_weights { 1 } else { orbit_size(mu) };
        let poles = |m: u32| Poles { x: base.x + m, p: base.p + m };
        let mut prev: Option<[u64; 5]> = None;
        let mut m = m0;
        let mut red = Reducer::new(&self.ring);
        loop {
            let h = self.betti_with(&mut red, atom, mode, mu, poles(m))?;
            if prev == Some(h) && BettiVector::alternating_sum(&h) == expected {
                if self.options.confirm {
                    let next = self.betti_with(&mut red, atom, mode, mu, poles(m + step))?;
                    if next != h {
                        return Err(Error::NotStabilized {
                            t_max: m + step,
                            detail: format!(
                                "weight {mu:?}: {h:?} at poles {} changed to {next:?} at {}",
                                poles(m),
                                poles(m + step)
                            ),
                        });
                    }
                }
                return Ok(WeightBetti { mu, multiplicity, h, t_used: m });
            }
            if m + step > m_max {
                let detail = match prev {
                    Some(p) if p == h => format!(
                        "weight {mu:?} of {}: stable {h:?} has Euler characteristic {} but {expected} expected",
                        atom.canonical(),
                        BettiVector::alternating_sum(&h)
                    ),
                    _ => format!("weight {mu:?} of {}: last values {prev:?} -> {h:?}", atom.canonical()),
                };
                return Err(Error::NotStabilized { t_max: m_max, detail });
            }
            prev = Some(h);
            m += step;
        }
    }

    /// Betti numbers at one torus weight and pole order.
    pub fn betti_at(&self, atom: &Atom, mode: CoverMode, mu: [i64; 2], t: Poles) -> Result<[u64; 5]> {
        self.betti_with(&mut Reducer::new(&self.ring), atom, mode, mu, t)
    }

    fn betti_with(&self, red: &mut Reducer, atom: &Atom, mode: CoverMode, mu: [i64; 2], t: Poles) -> Result<[u64; 5]> {
        self.builds.fetch_add(1, Ordering::Relaxed);
        let pres = Presentation::of(atom);
        let f = *self.ring.field();
        let all_terms = terms(mode, t);
        let top = mode.top_level();
        let max_level = top.min(5);
        let terms: Vec<&Term> = all_terms.iter().filter(|x| x.level <= max_level).collect();

        let block_of = |term: &Term, s: &Summand| -> Block {
            let deg = MultiDegree {
                a: s.line.a + term.shift.a,
                b: s.line.b + term.shift.b,
                w: [mu[0] - s.chi[0] + term.shift.w[0], mu[1] - s.chi[1] + term.shift.w[1]],
            };
            Block::new(self.ring.standard_basis(deg))
        };
        let src: Vec<Vec<Block>> = terms.iter().map(|x| pres.source.iter().map(|s| block_of(x, s)).collect()).collect();
        let tgt: Vec<Vec<Block>> = terms.iter().map(|x| pres.target.iter().map(|s| block_of(x, s)).collect()).collect();

        let total: usize = src.iter().chain(tgt.iter()).flatten().map(|b| b.basis.len()).sum();
        if total > self.options.max_basis {
            return Err(Error::Resource(format!(
                "weight {mu:?} at T={t}: {total} basis monomials exceed the budget of {}",
                self.options.max_basis
            )));
        }

        // offsets of each (term, summand) block within its level
        let mut src_off = vec![Vec::new(); terms.len()];
        let mut tgt_off = vec![Vec::new(); terms.len()];
        let mut src_dim = vec![0usize; max_level + 1];
        let mut tgt_dim = vec![0usize; max_level + 1];
        for (ti, term) in terms.iter().enumerate() {
            for b in &src[ti] {
                src_off[ti].push(src_dim[term.level]);
                src_dim[term.level] += b.basis.len();
            }
            for b in &tgt[ti] {
                tgt_off[ti].push(tgt_dim[term.level]);
                tgt_dim[term.level] += b.basis.len();
            }
        }
        let term_index: HashMap<(u8, u8), usize> =
            terms.iter().enumerate().map(|(i, x)| ((x.imask, x.jmask), i)).collect();

        let edges: Vec<Vec<Edge>> = terms.iter().map(|x| edges_from(x, mode, t, &term_index, max_level)).collect();

        let mut rank_md = vec![0usize; max_level + 1];
        let mut rank_m = vec![0usize; max_level + 1];
        let levels_needed = 4.min(max_level);
        for level in 0..=levels_needed {
            let mut md = Echelon::new(f);
            let mut mo = Echelon::new(f);
            let shift = tgt_dim[level] as u32;
            for (ti, term) in terms.iter().enumerate() {
                if term.level != level {
                    continue;
                }
                for c in 0..pres.source.len() {
                    for &m in &src[ti][c].basis {
                        let mut mpart = Vec::new();
                        if let Some(entries) = pres.entries {
                            for (r, row) in entries.iter().enumerate() {
                                for (mono, coef) in row[c].terms() {
                                    let c = f.from_i64(*coef);
                                    nf_into(red, &f, &mut mpart, m.mul(mono), &tgt[ti][r], tgt_off[ti][r], c)?;
                                }
                            }
                        }
                        let mut dpart = Vec::new();
                        for e in &edges[ti] {
                            let mm = m.mul(&Monomial::var_pow(e.var, e.pow));
                            nf_into(red, &f, &mut dpart, mm, &src[e.to][c], src_off[e.to][c], f.from_i64(e.sign))?;
                        }
                        let mpart = collect_sparse(&f, mpart);
                        let dpart = collect_sparse(&f, dpart);
                        let mut v = mpart.clone();
                        v.extend(dpart.iter().map(|&(i, x)| (i + shift, x)));
                        md.insert(v);
                        if !mpart.is_empty() {
                            mo.insert(mpart);
                        }
                    }
                }
            }
            rank_md[level] = md.rank();
            rank_m[level] = mo.rank();
        }
        if self.options.verify_d2 {
            check_d2(red, &f, &terms, &edges, &src, pres.source.len())?;
        }
        let mut h = [0u64; 5];
        for k in 0..=levels_needed {
            let prev = if k == 0 { 0 } else { rank_md[k - 1] as i64 - rank_m[k - 1] as i64 };
            let v = src_dim[k] as i64 - rank_md[k] as i64 - prev;
            if v < 0 {
                return Err(Error::Model(format!("negative dimension at level {k}, weight {mu:?}")));
            }
            h[k] = v as u64;
        }
        Ok(h)
    }

    /// Computes `λ` and its Serre dual and compares `h^i(λ)` with `h^{4−i}`.
    pub fn dual_check(&self, lambda: Weight) -> Result<DualCheck> {
        let a = self.cohomology_line(lambda)?;
        let b = self.cohomology_line(serre_dual(lambda))?;
        let pass = (0..5).all(|i| a.h[i] == b.h[4 - i]);
        Ok(DualCheck { lambda, dual: serre_dual(lambda), h: a, h_dual: b, pass })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DualCheck {
    pub lambda: Weight,
    pub dual: Weight,
    pub h: BettiVector,
    pub h_dual: BettiVector,
    pub pass: bool,
}

/// Convenience wrapper with default options.
pub fn cohomology_line(lambda: Weight, p: Prime, schedule: Schedule) -> Result<BettiVector> {
    Engine::new(p, EngineOptions { schedule, ..Default::default() }).cohomology_line(lambda)
}

pub fn cohomology_expr(e: &SheafExpr, p: Prime, schedule: Schedule) -> Result<BettiVector> {
    Engine::new(p, EngineOptions { schedule, ..Default::default() }).cohomology_expr(e)
}

pub fn dual_check(lambda: Weight, p: Prime, schedule: Schedule) -> Result<DualCheck> {
    Engine::new(p, EngineOptions { schedule, ..Default::default() }).dual_check(lambda)
}

/// One component of the Čech differential: multiply by `var^T`, land in `to`.
struct Edge {
    to: usize,
    var: usize,
    pow: u16,
    sign: i64,
}

fn edges_from(term: &Term, mode: CoverMode, t: Poles, term_index: &HashMap<(u8, u8), usize>, max_level: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    if term.level + 1 > max_level {
        return out;
    }
    // total complex of the double complex: d = d_x + (−1)^{x-degree} d_p
    let xsign: i64 = if mode == CoverMode::Both && popcount(term.imask) % 2 == 0 { -1 } else { 1 };
    for k in 0..4u8 {
        if term.imask & (1 << k) == 0 && mode != CoverMode::P {
            let before = popcount(term.imask & ((1 << k) - 1));
            out.push(Edge {
                to: term_index[&(term.imask | (1 << k), term.jmask)],
                var: X_VARS[k as usize],
                pow: t.x as u16,
                sign: if before % 2 == 0 { 1 } else { -1 },
            });
        }
        if term.jmask & (1 << k) == 0 && mode != CoverMode::X {
            let before = popcount(term.jmask & ((1 << k) - 1));
            out.push(Edge {
                to: term_index[&(term.imask, term.jmask | (1 << k))],
                var: P_CHART_VARS[k as usize],
                pow: t.p as u16,
                sign: if before % 2 == 0 { xsign } else { -xsign },
            });
        }
    }
    out
}

/// Appends the coordinates of `c·NF(m)` in `block` (offset `off`).
fn nf_into(red: &mut Reducer, f: &Fp, out: &mut Vec<(u32, u32)>, m: Monomial, block: &Block, off: usize, c: u32) -> Result<()> {
    let mut missing = None;
    red.for_each_term(m, |s, v| match block.index.get(&s) {
        Some(idx) => out.push((off as u32 + idx, f.mul(c, v))),
        None => missing = Some(s),
    });
    match missing {
        Some(s) => Err(Error::Model(format!("normal form monomial {s} outside its graded piece"))),
        None => Ok(()),
    }
}

/// Asserts `d∘d = 0` by applying the differential twice to every basis element.
fn check_d2(
    red: &mut Reducer,
    f: &Fp,
    terms: &[&Term],
    edges: &[Vec<Edge>],
    src: &[Vec<Block>],
    nsummands: usize,
) -> Result<()> {
    for ti in 0..terms.len() {
        for c in 0..nsummands {
            for &m in &src[ti][c].basis {
                let mut acc: HashMap<(usize, Monomial), u32> = HashMap::default();
                for e1 in &edges[ti] {
                    let m1s = red.normal_form(m.mul(&Monomial::var_pow(e1.var, e1.pow)));
                    for (m1, c1) in m1s.iter() {
                        let c1 = f.mul(*c1, f.from_i64(e1.sign));
                        for e2 in &edges[e1.to] {
                            for (m2, c2) in red.normal_form(m1.mul(&Monomial::var_pow(e2.var, e2.pow))).iter() {
                                let v = f.mul(c1, f.mul(*c2, f.from_i64(e2.sign)));
                                let slot = acc.entry((e2.to, *m2)).or_insert(0);
                                *slot = f.add(*slot, v);
                            }
                        }
                    }
                }
                if let Some(((tk, m2), _)) = acc.iter().find(|(_, v)| **v != 0) {
                    return Err(Error::Model(format!(
                        "d∘d ≠ 0 from term {:?} to {:?}: {m} -> {m2}",
                        (terms[ti].imask, terms[ti].jmask),
                        (terms[*tk].imask, terms[*tk].jmask)
                    )));
                }
            }
        }
    }
    Ok(())
}
