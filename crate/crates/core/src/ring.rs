//! The multigraded coordinate ring `S/I` of the flag variety inside
//! `P³ × P⁵`, presented by a rewriting system whose left-hand sides are the
//! leading monomials of a Gröbner basis (graded reverse lexicographic order
//! with `p24 > p13 > p12 > p14 > p23 > p34 > x1 > x2 > x3 > x4`).
//!
//! Standard monomials (those divisible by no leading monomial) form a basis
//! of every graded piece of `S/I`; `Reducer` computes normal forms.

use std::cmp::Ordering;
use rustc_hash::FxHashMap as HashMap;
use std::rc::Rc;

use crate::field::{Fp, Prime};
use crate::poly::{var::*, Monomial, MultiDegree, Poly, NVARS};

/// `lead ≡ Σ c·tail` modulo the ideal.
#[derive(Debug, Clone)]
pub struct Rule {
    pub lead: Monomial,
    pub tail: Vec<(Monomial, i64)>,
}

impl Rule {
    /// The ideal element `lead − tail`.
    pub fn as_poly(&self) -> Poly {
        let mut t = vec![(self.lead, 1)];
        t.extend(self.tail.iter().map(|(m, c)| (*m, -c)));
        Poly::from_terms(t)
    }
}

fn mono(vars: &[usize]) -> Monomial {
    let mut e = [0u16; NVARS];
    for &v in vars {
        e[v] += 1;
    }
    Monomial(e)
}

/// The rewriting rules, one per ideal generator after eliminating `p24`
/// from the quadric and the incidence forms by the linear relation.
pub fn standard_rules() -> Vec<Rule> {
    vec![
        // p13 + p24
        Rule { lead: mono(&[P24]), tail: vec![(mono(&[P13]), -1)] },
        // p12 p34 - p13 p24 + p14 p23, with p24 = -p13
        Rule { lead: mono(&[P13, P13]), tail: vec![(mono(&[P12, P34]), -1), (mono(&[P14, P23]), -1)] },
        // x1 p24 - x2 p14 + x4 p12, with p24 = -p13
        Rule { lead: mono(&[P13, X1]), tail: vec![(mono(&[P12, X4]), 1), (mono(&[P14, X2]), -1)] },
        // x1 p23 - x2 p13 + x3 p12
        Rule { lead: mono(&[P23, X1]), tail: vec![(mono(&[P13, X2]), 1), (mono(&[P12, X3]), -1)] },
        // x1 p34 - x3 p14 + x4 p13
        Rule { lead: mono(&[P34, X1]), tail: vec![(mono(&[P14, X3]), 1), (mono(&[P13, X4]), -1)] },
        // x2 p34 - x3 p24 + x4 p23, with p24 = -p13
        Rule { lead: mono(&[P34, X2]), tail: vec![(mono(&[P13, X3]), -1), (mono(&[P23, X4]), -1)] },
    ]
}

/// Variable order used by the term order, largest first.
const VAR_ORDER: [usize; NVARS] = [P24, P13, P12, P14, P23, P34, X1, X2, X3, X4];

/// Graded reverse lexicographic comparison.
pub fn grevlex_cmp(m1: &Monomial, m2: &Monomial) -> Ordering {
    let d1 = m1.total_degree();
    let d2 = m2.total_degree();
    if d1 != d2 {
        return d1.cmp(&d2);
    }
    for &v in VAR_ORDER.iter().rev() {
        let (e1, e2) = (m1.0[v], m2.0[v]);
        if e1 != e2 {
            // smaller exponent in the smallest variable wins
            return e2.cmp(&e1);
        }
    }
    Ordering::Equal
}

#[derive(Debug, Clone)]
pub struct CoordinateRing {
    field: Fp,
    rules: Vec<Rule>,
}

impl CoordinateRing {
    pub fn new(p: Prime) -> Self {
        CoordinateRing { field: Fp::new(p), rules: standard_rules() }
    }

    pub fn field(&self) -> &Fp {
        &self.field
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    #[inline]
    fn applicable(&self, m: &Monomial) -> Option<&Rule> {
        let e = &m.0;
        // fast paths matching `standard_rules` order
        if e[P24] == 0 && e[P13] < 2 && (e[X1] == 0 || (e[P13] == 0 && e[P23] == 0 && e[P34] == 0))
            && (e[X2] == 0 || e[P34] == 0)
        {
            return None;
        }
        self.rules.iter().find(|r| r.lead.divides(m))
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.applicable(m).is_none()
    }

    /// Standard monomials of the given multidegree, sorted.
    pub fn standard_basis(&self, deg: MultiDegree) -> Vec<Monomial> {
        let mut out = Vec::new();
        if deg.a < 0 || deg.b < 0 {
            return out;
        }
        let a = deg.a as u16;
        let b = deg.b as i64;
        for n1 in 0..=a {
            for n2 in 0..=(a - n1) {
                for n3 in 0..=(a - n1 - n2) {
                    let n4 = a - n1 - n2 - n3;
                    let wx = [n1 as i64 - n3 as i64, n2 as i64 - n4 as i64];
                    let u = deg.w[0] - wx[0];
                    let v = deg.w[1] - wx[1];
                    // p13 exponent is at most 1 for standard monomials
                    for e13 in 0..=1i64.min(b) {
                        let bb = b - e13;
                        if (bb + u) % 2 != 0 || (bb + v) % 2 != 0 {
                            continue;
                        }
                        let big_a = (bb + u) / 2; // n12 + n14
                        let big_b = (bb + v) / 2; // n12 + n23
                        // n12 = t, n14 = A - t, n23 = B - t, n34 = bb - A - B + t
                        let lo = 0.max(big_a + big_b - bb);
                        let hi = big_a.min(big_b);
                        for t in lo..=hi {
                            let mut e = [0u16; NVARS];
                            e[X1] = n1;
                            e[X2] = n2;
                            e[X3] = n3;
                            e[X4] = n4;
                            e[P13] = e13 as u16;
                            e[P12] = t as u16;
                            e[P14] = (big_a - t) as u16;
                            e[P23] = (big_b - t) as u16;
                            e[P34] = (bb - big_a - big_b + t) as u16;
                            let m = Monomial(e);
                            if self.is_standard(&m) {
                                out.push(m);
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }
}

/// Sparse normal form: standard monomials with nonzero coefficients in F_p.
pub type NormalForm = Rc<Vec<(Monomial, u32)>>;

/// Memoizing normal-form computer. Not `Send`; create one per worker.
pub struct Reducer<'a> {
    ring: &'a CoordinateRing,
    memo: HashMap<Monomial, NormalForm>,
}

impl<'a> Reducer<'a> {
    pub fn new(ring: &'a CoordinateRing) -> Self {
        Reducer { ring, memo: HashMap::default() }
    }

    pub fn ring(&self) -> &CoordinateRing {
        self.ring
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn normal_form(&mut self, m: Monomial) -> NormalForm {
        if let Some(nf) = self.memo.get(&m) {
            return nf.clone();
        }
        let nf = match self.ring.applicable(&m) {
            None => Rc::new(vec![(m, 1)]),
            Some(rule) => {
                let mut acc: HashMap<Monomial, u32> = HashMap::default();
                self.reduce_into(rule, &m, 1, &mut acc);
                let mut v: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
                v.sort_unstable_by(|x, y| x.0.cmp(&y.0));
                Rc::new(v)
            }
        };
        self.memo.insert(m, nf.clone());
        nf
    }

    /// Adds `c·NF(m)` to `acc`, where `rule` applies to `m`. Standard
    /// monomials are added directly without touching the memo.
    fn reduce_into(&mut self, rule: &Rule, m: &Monomial, c: u32, acc: &mut HashMap<Monomial, u32>) {
        let f = *self.ring.field();
        let u = rule.lead.quotient_of(m);
        for (t, tc) in &rule.tail {
            let mt = u.mul(t);
            let c2 = f.mul(c, f.from_i64(*tc));
            if self.ring.applicable(&mt).is_none() {
                let e = acc.entry(mt).or_insert(0);
                *e = f.add(*e, c2);
            } else {
                let sub = self.normal_form(mt);
                for (s, d) in sub.iter() {
                    let e = acc.entry(*s).or_insert(0);
                    *e = f.add(*e, f.mul(c2, *d));
                }
            }
        }
    }

    /// Calls `visit(s, c)` for the terms of `NF(m)`.
    #[inline]
    pub fn for_each_term(&mut self, m: Monomial, mut visit: impl FnMut(Monomial, u32)) {
        if self.ring.is_standard(&m) {
            visit(m, 1);
            return;
        }
        for (s, c) in self.normal_form(m).iter() {
            visit(*s, *c);
        }
    }

    /// Normal form of an integer polynomial.
    pub fn reduce_poly(&mut self, g: &Poly) -> Vec<(Monomial, u32)> {
        let f = *self.ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::default();
        for (m, c) in g.terms() {
            let c = f.from_i64(*c);
            if c == 0 {
                continue;
            }
            for (s, d) in self.normal_form(*m).iter() {
                let e = acc.entry(*s).or_insert(0);
                *e = f.add(*e, f.mul(c, *d));
            }
        }
        let mut v: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        v.sort_by(|x, y| x.0.cmp(&y.0));
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lcm(a: &Monomial, b: &Monomial) -> Monomial {
        let mut e = [0u16; NVARS];
        for i in 0..NVARS {
            e[i] = a.0[i].max(b.0[i]);
        }
        Monomial(e)
    }

    #[test]
    fn tails_are_smaller_than_leads() {
        for r in standard_rules() {
            for (t, _) in &r.tail {
                assert_eq!(grevlex_cmp(t, &r.lead), Ordering::Less, "{} vs {}", t, r.lead);
            }
            // every other monomial of the rule is smaller in the term order
            assert!(r.as_poly().degree().is_some(), "rule must be homogeneous");
        }
    }

    #[test]
    fn s_pairs_reduce_to_zero() {
        // Buchberger criterion: the rules form a Gröbner basis.
        for p in [3, 5, 7] {
            let ring = CoordinateRing::new(Prime::new(p).unwrap());
            let mut red = Reducer::new(&ring);
            let rules = standard_rules();
            for i in 0..rules.len() {
                for j in (i + 1)..rules.len() {
                    let l = lcm(&rules[i].lead, &rules[j].lead);
                    let gi = Poly::monomial(rules[i].lead.quotient_of(&l), 1).mul(&rules[i].as_poly());
                    let gj = Poly::monomial(rules[j].lead.quotient_of(&l), 1).mul(&rules[j].as_poly());
                    let s = gi.add(&gj.neg());
                    assert!(red.reduce_poly(&s).is_empty(), "S({i},{j}) does not reduce to 0 mod {p}");
                }
            }
        }
    }

    #[test]
    fn standard_basis_counts_match_weyl_dimension() {
        use crate::rootdata::{euler_characteristic, Weight};
        let ring = CoordinateRing::new(Prime::new(3).unwrap());
        for (a, b) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 3), (4, 2)] {
            let r = 2 * (a + b) + 2;
            let mut total = 0usize;
            for w0 in -r..=r {
                for w1 in -r..=r {
                    total += ring.standard_basis(MultiDegree { a, b, w: [w0, w1] }).len();
                }
            }
            assert_eq!(total as i64, euler_characteristic(Weight::new(a, b)), "({a},{b})");
        }
    }

    #[test]
    fn reduced_forms_are_standard() {
        let ring = CoordinateRing::new(Prime::new(5).unwrap());
        let mut red = Reducer::new(&ring);
        let m = Monomial([3, 1, 0, 2, 1, 2, 0, 1, 1, 2]);
        for (s, _) in red.normal_form(m).iter() {
            assert!(ring.is_standard(s));
            assert_eq!(s.degree(), m.degree());
        }
    }
}
