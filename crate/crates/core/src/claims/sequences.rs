//! Exact sequences used by the deductions, with every term written in the
//! expression grammar on `X` (bundles on `Q₃` pulled back along `q`, and
//! `⊗ S^q U₂^*` realized as `⊗ O(q,0)`). Terms never materialized as
//! sheaves — `F*S²U₂^* ⊗ S^q U₂^*` — are entered by their line-bundle class.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::field::Prime;
use crate::parse::parse_expr;
use crate::sheaf::rewrite;

use super::GridPoint;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceTerm {
    pub expr: String,
    pub copies: i64,
}

/// `0 → T₀ → T₁ → … → 0`, exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sequence {
    pub name: String,
    pub terms: Vec<SequenceTerm>,
}

impl Sequence {
    fn new(name: &str, terms: &[(i64, String)]) -> Self {
        Sequence {
            name: name.to_string(),
            terms: terms.iter().map(|(c, e)| SequenceTerm { expr: e.clone(), copies: *c }).collect(),
        }
    }

    /// Euler characteristic of each term (with multiplicity).
    pub fn chis(&self, p: Prime) -> Result<Vec<i64>> {
        self.terms
            .iter()
            .map(|t| Ok(t.copies * rewrite(&parse_expr(&t.expr)?, p)?.expr.euler_characteristic()?))
            .collect()
    }

    /// `Σ (−1)^k χ(T_k)`, zero for an exact sequence.
    pub fn alternating_chi(&self, p: Prime) -> Result<i64> {
        Ok(self.chis(p)?.iter().enumerate().map(|(k, c)| if k % 2 == 0 { *c } else { -c }).sum())
    }
}

pub fn registered_sequences(g: GridPoint) -> Vec<Sequence> {
    let q = g.q();
    let n = g.n;
    let o = |a: i64, b: i64| format!("O({a},{b})");
    let s2_frob_sym = format!("{} + {} + {}", o(3 * q, 0), o(q, q), o(-q, 2 * q));
    vec![
        Sequence::new("tautological line filtration of U2", &[(1, o(-1, 0)), (1, "U2".into()), (1, o(1, -1))]),
        Sequence::new(
            "Frobenius pullback of the line filtration",
            &[(1, o(-q, 0)), (1, format!("FU2({n})")), (1, o(q, -q))],
        ),
        Sequence::new(
            "dual Frobenius line filtration",
            &[(1, o(-q, q)), (1, format!("FU2*({n})")), (1, o(q, 0))],
        ),
        Sequence::new("universal sequence on Q3", &[(1, "U2".into()), (4, o(0, 0)), (1, "U2*".into())]),
        Sequence::new(
            "Frobenius universal sequence tensor S^q U2*",
            &[(1, format!("FU2({n}) & {}", o(q, 0))), (4, o(q, 0)), (1, format!("FU2*({n}) & {}", o(q, 0)))],
        ),
        Sequence::new(
            "dual line filtration tensor pi*O(q)",
            &[(1, o(0, q)), (1, format!("FU2*({n}) & {}", o(q, 0))), (1, o(2 * q, 0))],
        ),
        Sequence::new(
            "Frobenius symmetric square of the universal sequence tensor S^q U2*",
            &[(1, o(q, -q)), (4, format!("FU2({n}) & {}", o(q, 0))), (10, o(q, 0)), (1, s2_frob_sym.clone())],
        ),
        Sequence::new(
            "Frobenius universal sequence tensor pi*O(-q)",
            &[(1, format!("FU2({n}) & {}", o(-q, 0))), (4, o(-q, 0)), (1, format!("FU2*({n}) & {}", o(-q, 0)))],
        ),
        Sequence::new(
            "Frobenius line filtration tensor pi*O(-q)",
            &[(1, o(-2 * q, 0)), (1, format!("FU2({n}) & {}", o(-q, 0))), (1, o(0, -q))],
        ),
        Sequence::new("Euler-type resolution of Omega1(1)|Q", &[(1, "Omega1".into()), (5, o(0, 0)), (1, o(0, 1))]),
        Sequence::new(
            "Koszul sequence for Omega2(2)|Q",
            &[(1, "Omega2".into()), (10, o(0, 0)), (1, "Omega1(0,1)".into())],
        ),
        Sequence::new(
            "dual adjunction sequence on Q3",
            &[(1, o(0, 0)), (1, "Omega1(0,1)".into()), (1, "TQ3".into())],
        ),
        Sequence::new(
            "Frobenius resolution of Omega1(1)|Q tensor S^q U2*",
            &[(1, format!("FOmega1({n}) & {}", o(q, 0))), (5, o(q, 0)), (1, o(q, q))],
        ),
        Sequence::new(
            "Frobenius Koszul sequence tensor S^q U2*",
            &[
                (1, format!("FOmega2({n}) & {}", o(q, 0))),
                (10, o(q, 0)),
                (1, format!("FOmega1({n})(0,{q}) & {}", o(q, 0))),
            ],
        ),
        Sequence::new(
            "Frobenius dual adjunction sequence tensor S^q U2*",
            &[(1, o(q, 0)), (1, format!("FOmega1({n})(0,{q}) & {}", o(q, 0))), (1, s2_frob_sym)],
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_sequence_is_chi_additive() {
        for g in super::super::DEFAULT_GRID {
            let p = Prime::new(g.p).unwrap();
            for s in registered_sequences(g) {
                assert_eq!(s.alternating_chi(p).unwrap(), 0, "{} at {g}", s.name);
            }
        }
    }
}
