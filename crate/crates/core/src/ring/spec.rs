//! Parser for ring specification strings such as `Z4`, `GF(2)[e]`,
//! `GF(2)xGF(2)`, `M2(GF(2))` or `T2(GF(3))`.
//!
//! ```text
//! ring   := factor ('x' factor)*          products associate to the left
//! factor := atom '[e]'?                    dual numbers over a field
//! atom   := 'Z' n | 'GF(' q ')' | 'M' n '(' ring ')' | 'T' n '(' ring ')'
//!         | '(' ring ')'
//! ```

use super::{
    make_dual, make_gf, make_matrix_ring, make_product, make_ternions, make_zn, FiniteRing,
};
use crate::error::{Error, Result};

struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

/// Parses and builds the ring named by `spec`.
pub fn parse_ring(spec: &str) -> Result<FiniteRing> {
    let mut p = Parser {
        input: spec,
        chars: spec.chars().filter(|c| !c.is_whitespace()).collect(),
        pos: 0,
    };
    let ring = p.ring()?;
    if p.pos != p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(ring)
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            input: self.input.to_string(),
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        let n = s.chars().count();
        if self.chars.len() >= self.pos + n
            && self.chars[self.pos..self.pos + n]
                .iter()
                .copied()
                .eq(s.chars())
        {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{s}'")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("number out of range"))
    }

    fn ring(&mut self) -> Result<FiniteRing> {
        let mut acc = self.factor()?;
        while self.eat("x") {
            let rhs = self.factor()?;
            acc = make_product(&acc, &rhs)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FiniteRing> {
        let start = self.pos;
        let atom = self.atom()?;
        if self.eat("[e]") {
            if !atom.is_field() {
                self.pos = start;
                return Err(self.error("dual numbers need a field"));
            }
            return make_dual(&atom);
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<FiniteRing> {
        let start = self.pos;
        let located = |r: Result<FiniteRing>, pos: usize, input: &str| {
            r.map_err(|e| match e {
                Error::Construction(msg) => Error::Parse {
                    input: input.to_string(),
                    pos,
                    msg,
                },
                other => other,
            })
        };
        if self.eat("GF(") {
            let q = self.number()?;
            self.expect(")")?;
            return located(make_gf(q), start, self.input);
        }
        if self.eat("Z") {
            let n = self.number()?;
            return located(make_zn(n), start, self.input);
        }
        for (prefix, triangular) in [("M", false), ("T", true)] {
            if self.eat(prefix) {
                let n = self.number()?;
                self.expect("(")?;
                let field = self.ring()?;
                self.expect(")")?;
                let built = if triangular {
                    make_ternions(&field, n)
                } else {
                    make_matrix_ring(&field, n)
                };
                return located(built, start, self.input);
            }
        }
        if self.eat("(") {
            let r = self.ring()?;
            self.expect(")")?;
            return Ok(r);
        }
        Err(self.error("expected Z, GF(, M, T or ("))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_specs() {
        for (spec, size, name) in [
            ("Z4", 4, "Z4"),
            ("GF(3)", 3, "GF(3)"),
            ("GF(2)[e]", 4, "GF(2)[e]"),
            ("GF(2)xGF(2)", 4, "GF(2)xGF(2)"),
            ("M2(GF(2))", 16, "M2(GF(2))"),
            ("T2(GF(2))", 8, "T2(GF(2))"),
            ("Z4xGF(2)", 8, "Z4xGF(2)"),
            ("Z2xZ2xZ2", 8, "Z2xZ2xZ2"),
            (" GF(4) [e] ", 16, "GF(4)[e]"),
        ] {
            let r = parse_ring(spec).unwrap();
            assert_eq!((r.size(), r.name()), (size, name), "{spec}");
        }
    }

    #[test]
    fn reports_positions() {
        match parse_ring("GF(2)xQ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        match parse_ring("Z4[e]") {
            Err(Error::Parse { pos, msg, .. }) => {
                assert_eq!(pos, 0);
                assert!(msg.contains("field"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_ring("GF(6)"),
            Err(Error::Parse { pos: 0, .. })
        ));
        assert!(matches!(parse_ring("GF(2"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_ring("Z4)"),
            Err(Error::Parse { pos: 2, .. })
        ));
    }
}
