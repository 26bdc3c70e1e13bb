//! Monomials and sparse polynomials in the ten ambient coordinates of
//! `P³ × P⁵`: `x₁..x₄` and the Plücker coordinates `p₁₂..p₃₄`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::field::Fp;

pub const NVARS: usize = 10;

/// Variable indices.
pub mod var {
    pub const X1: usize = 0;
    pub const X2: usize = 1;
    pub const X3: usize = 2;
    pub const X4: usize = 3;
    pub const P12: usize = 4;
    pub const P13: usize = 5;
    pub const P14: usize = 6;
    pub const P23: usize = 7;
    pub const P24: usize = 8;
    pub const P34: usize = 9;
}

pub const VAR_NAMES: [&str; NVARS] = ["x1", "x2", "x3", "x4", "p12", "p13", "p14", "p23", "p24", "p34"];

/// Torus weight of the coordinate `x_i`, epsilon coordinates.
pub const X_WEIGHTS: [[i64; 2]; 4] = [[1, 0], [0, 1], [-1, 0], [0, -1]];

/// `(j, k)` index pairs (0-based) of the Plücker coordinates, in variable order.
pub const P_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Grading of the coordinate ring: bidegree and torus weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiDegree {
    pub a: i64,
    pub b: i64,
    pub w: [i64; 2],
}

impl MultiDegree {
    pub const ZERO: MultiDegree = MultiDegree { a: 0, b: 0, w: [0, 0] };

    pub fn of_var(v: usize) -> MultiDegree {
        if v < 4 {
            MultiDegree { a: 1, b: 0, w: X_WEIGHTS[v] }
        } else {
            let (j, k) = P_PAIRS[v - 4];
            let w = [X_WEIGHTS[j][0] + X_WEIGHTS[k][0], X_WEIGHTS[j][1] + X_WEIGHTS[k][1]];
            MultiDegree { a: 0, b: 1, w }
        }
    }

    pub fn add(self, o: MultiDegree) -> MultiDegree {
        MultiDegree { a: self.a + o.a, b: self.b + o.b, w: [self.w[0] + o.w[0], self.w[1] + o.w[1]] }
    }

    pub fn sub(self, o: MultiDegree) -> MultiDegree {
        MultiDegree { a: self.a - o.a, b: self.b - o.b, w: [self.w[0] - o.w[0], self.w[1] - o.w[1]] }
    }

    pub fn scale(self, k: i64) -> MultiDegree {
        MultiDegree { a: self.a * k, b: self.b * k, w: [self.w[0] * k, self.w[1] * k] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: usize) -> Monomial {
        let mut e = [0; NVARS];
        e[v] = 1;
        Monomial(e)
    }

    pub fn var_pow(v: usize, k: u16) -> Monomial {
        let mut e = [0; NVARS];
        e[v] = k;
        Monomial(e)
    }

    #[inline]
    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(o.0.iter()) {
            *x += *y;
        }
        Monomial(e)
    }

    #[inline]
    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(x, y)| x <= y)
    }

    /// `o / self`, assuming `self` divides `o`.
    #[inline]
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        let mut e = o.0;
        for (x, y) in e.iter_mut().zip(self.0.iter()) {
            *x -= *y;
        }
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn degree(&self) -> MultiDegree {
        let mut d = MultiDegree::ZERO;
        for (v, &e) in self.0.iter().enumerate() {
            if e > 0 {
                d = d.add(MultiDegree::of_var(v).scale(e as i64));
            }
        }
        d
    }

    pub fn pow(&self, k: u16) -> Monomial {
        let mut e = self.0;
        for x in e.iter_mut() {
            *x *= k;
        }
        Monomial(e)
    }

    pub fn eval(&self, f: &Fp, point: &[u32; NVARS]) -> u32 {
        let mut r = 1;
        for (v, &e) in self.0.iter().enumerate() {
            if e > 0 {
                r = f.mul(r, f.pow(point[v], e as u64));
            }
        }
        r
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (v, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", VAR_NAMES[v])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Polynomial with integer coefficients, reduced mod `p` when evaluated or
/// used in a field computation. Terms are kept sorted and merged.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly {
    terms: Vec<(Monomial, i64)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn from_terms(mut terms: Vec<(Monomial, i64)>) -> Self {
        terms.sort_by(|x, y| x.0.cmp(&y.0));
        let mut out: Vec<(Monomial, i64)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Poly { terms: out }
    }

    pub fn monomial(m: Monomial, c: i64) -> Self {
        Poly::from_terms(vec![(m, c)])
    }

    pub fn var(v: usize) -> Self {
        Poly::monomial(Monomial::var(v), 1)
    }

    pub fn terms(&self) -> &[(Monomial, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut t = self.terms.clone();
        t.extend_from_slice(&o.terms);
        Poly::from_terms(t)
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut acc: HashMap<Monomial, i64> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                *acc.entry(m1.mul(m2)).or_insert(0) += c1 * c2;
            }
        }
        Poly::from_terms(acc.into_iter().collect())
    }

    /// Multidegree, if the polynomial is nonzero and homogeneous.
    pub fn degree(&self) -> Option<MultiDegree> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    /// Frobenius power `f^{p^n}` over F_p: every monomial raised to `p^n`,
    /// coefficients unchanged mod p.
    pub fn frobenius(&self, f: &Fp, q: u16) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.pow(q), f.from_i64(*c) as i64))
                .collect(),
        )
    }

    pub fn eval(&self, f: &Fp, point: &[u32; NVARS]) -> u32 {
        self.terms.iter().fold(0, |acc, (m, c)| f.add(acc, f.mul(f.from_i64(*c), m.eval(f, point))))
    }

    /// Partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: usize) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.0[v] > 0)
                .map(|(m, c)| {
                    let mut e = m.0;
                    let k = e[v] as i64;
                    e[v] -= 1;
                    (Monomial(e), c * k)
                })
                .collect(),
        )
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let c = c.abs();
            if c == 1 {
                write!(f, "{sign}{m}")?;
            } else {
                write!(f, "{sign}{c}*{m}")?;
            }
        }
        Ok(())
    }
}
