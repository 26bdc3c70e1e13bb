//! Vanishing bookkeeping: what exactness, Künneth and duality let one
//! conclude from known zeros. Only vanishing is ever concluded; no
//! connecting map is computed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cech::BettiVector;
use crate::error::{Error, Result};

/// Known-zero degrees of a cohomology vector of length `len` (5 on `X`, 9
/// on a product of two 4-folds).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Zeros(pub Vec<bool>);

impl Zeros {
    pub fn none(len: usize) -> Self {
        Zeros(vec![false; len])
    }

    pub fn of(h: &[u64]) -> Self {
        Zeros(h.iter().map(|&x| x == 0).collect())
    }

    /// Wanted pattern "`hⁱ = 0` for every `i` in `degrees`".
    pub fn at(len: usize, degrees: impl IntoIterator<Item = usize>) -> Self {
        let mut z = Zeros::none(len);
        for d in degrees {
            z.0[d] = true;
        }
        z
    }

    /// "`hⁱ = 0` for `i ≠ keep`".
    pub fn outside(len: usize, keep: &[usize]) -> Self {
        Zeros((0..len).map(|i| !keep.contains(&i)).collect())
    }

    /// "`hⁱ = 0` for `i > d`".
    pub fn above(len: usize, d: usize) -> Self {
        Zeros((0..len).map(|i| i > d).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn get(&self, i: isize) -> bool {
        // cohomology outside the vector vanishes
        i < 0 || i as usize >= self.0.len() || self.0[i as usize]
    }

    pub fn holds(&self, h: &[u64]) -> bool {
        self.0.iter().zip(h).all(|(&z, &x)| !z || x == 0)
    }

    /// Every zero wanted by `other` is known here.
    pub fn implies(&self, other: &Zeros) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(&a, &b)| a || !b)
    }

    pub fn and(&self, other: &Zeros) -> Zeros {
        Zeros(self.0.iter().zip(&other.0).map(|(&a, &b)| a && b).collect())
    }

    /// Serre duality on a 4-fold: `hⁱ(E) = h⁴⁻ⁱ(E^∨ ⊗ ω)`.
    pub fn dual(&self) -> Zeros {
        Zeros(self.0.iter().rev().copied().collect())
    }

    /// For `0 → A → B → C → 0`: `hⁱ(B) = 0` when `hⁱ(A) = hⁱ(C) = 0`.
    pub fn ses_middle(a: &Zeros, c: &Zeros) -> Zeros {
        a.and(c)
    }

    /// `hⁱ(A) = 0` when `hⁱ⁻¹(C) = hⁱ(B) = 0`.
    pub fn ses_left(b: &Zeros, c: &Zeros) -> Zeros {
        Zeros((0..b.len()).map(|i| b.get(i as isize) && c.get(i as isize - 1)).collect())
    }

    /// `hⁱ(C) = 0` when `hⁱ(B) = hⁱ⁺¹(A) = 0`.
    pub fn ses_right(a: &Zeros, b: &Zeros) -> Zeros {
        Zeros((0..b.len()).map(|i| b.get(i as isize) && a.get(i as isize + 1)).collect())
    }
}

impl fmt::Display for Zeros {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z: Vec<String> = self.0.iter().enumerate().filter(|e| *e.1).map(|(i, _)| i.to_string()).collect();
        if z.is_empty() {
            write!(f, "no vanishing")
        } else {
            write!(f, "h^i = 0 for i in {{{}}}", z.join(","))
        }
    }
}

/// Künneth on a product: `h^k = Σ_{i+j=k} hⁱ(L)·hʲ(R)`.
pub fn kunneth_combine(left: &BettiVector, right: &BettiVector) -> Result<Vec<u64>> {
    if !left.stabilized || !right.stabilized {
        return Err(Error::NotStabilized {
            t_max: left.t_used.max(right.t_used),
            detail: "Künneth combination of an unstabilized vector".into(),
        });
    }
    let mut out = vec![0u64; left.h.len() + right.h.len() - 1];
    for (i, &l) in left.h.iter().enumerate() {
        for (j, &r) in right.h.iter().enumerate() {
            out[i + j] += l * r;
        }
    }
    Ok(out)
}

/// Künneth at the level of known zeros: degree `k` of the product vanishes
/// when every split `i + j = k` has a known zero on one side.
pub fn kunneth_zeros(left: &Zeros, right: &Zeros) -> Zeros {
    let len = left.len() + right.len() - 1;
    Zeros(
        (0..len)
            .map(|k| {
                (0..left.len()).all(|i| {
                    let j = k as isize - i as isize;
                    j < 0 || j as usize >= right.len() || left.0[i] || right.0[j as usize]
                })
            })
            .collect(),
    )
}
