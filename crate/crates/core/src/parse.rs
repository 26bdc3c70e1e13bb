//! Mini-grammar for sheaf expressions.
//!
//! ```text
//! expr   := tensor ('+' tensor)*
//! tensor := factor (('⊗' | '&') factor)*
//! factor := atom twist*
//! twist  := '(' int ',' int ')'          twist by O(a,b)
//!         | '(' int ')'                  twist by O(0,m), the quadric's O(m)
//! atom   := 'O(' int ',' int ')' | 'U2' | 'U2*' | 'FU2(' n ')' | 'FU2*(' n ')'
//!         | 'SU2*(' k ')' | 'Omega1' | 'Omega2' | 'FOmega1(' n ')' | 'FOmega2(' n ')'
//!         | 'TQ3' | '[' expr ']'
//! ```
//!
//! Whitespace is ignored. `FU2(n)` is the n-th Frobenius pullback of U2.

use crate::error::{Error, Result};
use crate::rootdata::Weight;
use crate::sheaf::{Named, SheafExpr};

/// Parses `O(a,b)` or a bare `(a,b)` / `a,b` into a weight.
pub fn parse_weight(s: &str) -> Result<Weight> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.strip_prefix('O').unwrap_or(&t);
    let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
    let (a, b) = t.split_once(',').ok_or_else(|| Error::Parse(format!("expected a weight (a,b), got {s:?}")))?;
    let num = |x: &str| x.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {x:?} in {s:?}")));
    Ok(Weight::new(num(a)?, num(b)?))
}

pub fn parse_expr(s: &str) -> Result<SheafExpr> {
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { s: chars, i: 0, src: s };
    let e = p.expr()?;
    if p.i != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: Vec<char>,
    i: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        let rest: String = self.s[self.i.min(self.s.len())..].iter().collect();
        Error::Parse(format!("{what} at {rest:?} in {:?}", self.src))
    }

    fn peek(&self) -> Option<char> {
        self.s.get(self.i).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {c:?}")))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        let k: Vec<char> = kw.chars().collect();
        if self.s[self.i..].starts_with(&k) {
            self.i += k.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.i;
        if matches!(self.peek(), Some('-' | '+')) {
            self.i += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.i += 1;
        }
        let t: String = self.s[start..self.i].iter().collect();
        t.parse().map_err(|_| {
            self.i = start;
            self.err("expected an integer")
        })
    }

    fn expr(&mut self) -> Result<SheafExpr> {
        let mut parts = vec![self.tensor()?];
        while self.eat('+') {
            parts.push(self.tensor()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { SheafExpr::Sum(parts) })
    }

    fn tensor(&mut self) -> Result<SheafExpr> {
        let mut parts = vec![self.factor()?];
        while self.eat('⊗') || self.eat('&') {
            parts.push(self.factor()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { SheafExpr::Tensor(parts) })
    }

    fn factor(&mut self) -> Result<SheafExpr> {
        let mut e = self.atom()?;
        while self.eat('(') {
            let a = self.int()?;
            let w = if self.eat(',') { Weight::new(a, self.int()?) } else { Weight::new(0, a) };
            self.expect(')')?;
            e = e.twist(w);
        }
        Ok(e)
    }

    fn paren_int(&mut self) -> Result<i64> {
        self.expect('(')?;
        let v = self.int()?;
        self.expect(')')?;
        Ok(v)
    }

    fn frobenius_order(&mut self) -> Result<u32> {
        let n = self.paren_int()?;
        u32::try_from(n).ok().filter(|&n| n <= 8).ok_or_else(|| self.err("Frobenius order must be in 0..=8"))
    }

    fn atom(&mut self) -> Result<SheafExpr> {
        if self.eat('[') {
            let e = self.expr()?;
            self.expect(']')?;
            return Ok(e);
        }
        if self.keyword("FOmega1") {
            return Ok(SheafExpr::Named(Named::FrobOmega1(self.frobenius_order()?)));
        }
        if self.keyword("FOmega2") {
            return Ok(SheafExpr::Named(Named::FrobOmega2(self.frobenius_order()?)));
        }
        if self.keyword("Omega1") {
            return Ok(SheafExpr::Named(Named::Omega1));
        }
        if self.keyword("Omega2") {
            return Ok(SheafExpr::Named(Named::Omega2));
        }
        if self.keyword("TQ3") {
            return Ok(SheafExpr::Named(Named::TangentQ3));
        }
        if self.keyword("SU2*") {
            return Ok(SheafExpr::Named(Named::SymU2Dual(self.paren_int()?)));
        }
        if self.keyword("FU2*") {
            return Ok(SheafExpr::Named(Named::FrobU2Dual(self.frobenius_order()?)));
        }
        if self.keyword("FU2") {
            return Ok(SheafExpr::Named(Named::FrobU2(self.frobenius_order()?)));
        }
        if self.keyword("U2*") {
            return Ok(SheafExpr::Named(Named::U2Dual));
        }
        if self.keyword("U2") {
            return Ok(SheafExpr::Named(Named::U2));
        }
        if self.keyword("O(") {
            let a = self.int()?;
            self.expect(',')?;
            let b = self.int()?;
            self.expect(')')?;
            return Ok(SheafExpr::line(a, b));
        }
        Err(self.err("expected a bundle"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights() {
        assert_eq!(parse_weight("(2,3)").unwrap(), Weight::new(2, 3));
        assert_eq!(parse_weight("O(3, -3)").unwrap(), Weight::new(3, -3));
        assert_eq!(parse_weight("-1,4").unwrap(), Weight::new(-1, 4));
        assert!(parse_weight("(1;2)").is_err());
    }

    #[test]
    fn lines_and_twists() {
        assert_eq!(parse_expr("O(3,-3)").unwrap(), SheafExpr::line(3, -3));
        assert_eq!(parse_expr("O(1,0)(0,2)").unwrap(), SheafExpr::line(1, 0).twist(Weight::new(0, 2)));
        assert_eq!(parse_expr("U2(-2)").unwrap(), SheafExpr::Named(Named::U2).twist(Weight::new(0, -2)));
    }

    #[test]
    fn named_bundles() {
        assert_eq!(parse_expr("FU2(1)").unwrap(), SheafExpr::Named(Named::FrobU2(1)));
        assert_eq!(parse_expr("FU2*(2)").unwrap(), SheafExpr::Named(Named::FrobU2Dual(2)));
        assert_eq!(parse_expr("SU2*(3)").unwrap(), SheafExpr::Named(Named::SymU2Dual(3)));
        assert_eq!(parse_expr("U2*").unwrap(), SheafExpr::Named(Named::U2Dual));
        assert_eq!(parse_expr("FOmega2(1)").unwrap(), SheafExpr::Named(Named::FrobOmega2(1)));
    }

    #[test]
    fn sums_tensors_and_groups() {
        let e = parse_expr("[O(1,0) + O(0,1)] ⊗ FU2(1)").unwrap();
        assert_eq!(
            e,
            SheafExpr::Tensor(vec![
                SheafExpr::Sum(vec![SheafExpr::line(1, 0), SheafExpr::line(0, 1)]),
                SheafExpr::Named(Named::FrobU2(1)),
            ])
        );
        assert_eq!(parse_expr("SU2*(3) & FU2(1)").unwrap(), parse_expr("SU2*(3)⊗FU2(1)").unwrap());
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "O(1)", "FU2(-1)", "U3", "O(1,0) +", "[O(0,0)", "O(0,0) junk"] {
            assert!(parse_expr(s).is_err(), "{s}");
        }
    }
}
