use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::QuadraticReal;
use crate::{Error, Result};

/// Parses a number literal such as `3/4`, `-2+2*sqrt(2)`, `-1/sqrt(2)` or `tau`.
///
/// The grammar is ordinary arithmetic over integers, `sqrt(..)` of a
/// non-negative rational, the constant `tau`, parentheses and `+ - * /`.
/// Decimal points are rejected.
pub fn parse_literal(input: &str) -> Result<QuadraticReal> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
        input,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing characters"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    input: &'a str,
}

impl Parser<'_> {
    fn err(&self, reason: &str) -> Error {
        Error::Parse {
            input: self.input.to_string(),
            reason: format!("{reason} at byte {}", self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn lift(&self, r: Result<QuadraticReal>) -> Result<QuadraticReal> {
        r.map_err(|e| match e {
            Error::Parse { .. } => e,
            other => self.err(&other.to_string()),
        })
    }

    fn expr(&mut self) -> Result<QuadraticReal> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc = self.lift(acc.checked_add(&t))?;
            } else if self.eat(b'-') {
                let t = self.term()?;
                acc = self.lift(acc.checked_sub(&t))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QuadraticReal> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                let t = self.unary()?;
                acc = self.lift(acc.checked_mul(&t))?;
            } else if self.eat(b'/') {
                let t = self.unary()?;
                acc = self.lift(acc.checked_div(&t))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<QuadraticReal> {
        if self.eat(b'-') {
            Ok(-self.unary()?)
        } else if self.eat(b'+') {
            self.unary()
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<QuadraticReal> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if self.src.get(self.pos) == Some(&b'.') {
                    return Err(self.err("decimal literals are not exact"));
                }
                let digits = &self.input[start..self.pos];
                let n: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(QuadraticReal::from_bigint(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                match &self.input[start..self.pos] {
                    "tau" => Ok(QuadraticReal::tau()),
                    "sqrt" => {
                        if !self.eat(b'(') {
                            return Err(self.err("expected '(' after sqrt"));
                        }
                        let arg = self.expr()?;
                        if !self.eat(b')') {
                            return Err(self.err("expected ')'"));
                        }
                        self.sqrt_of(&arg)
                    }
                    other => Err(self.err(&format!("unknown identifier {other:?}"))),
                }
            }
            _ => Err(self.err("expected a number")),
        }
    }

    fn sqrt_of(&self, arg: &QuadraticReal) -> Result<QuadraticReal> {
        let r = arg
            .as_rational()
            .ok_or_else(|| self.err("sqrt of an irrational"))?;
        if r.is_negative() {
            return Err(self.err("sqrt of a negative number"));
        }
        // √(n/m) = √(n·m)/m
        let nm = (r.numer() * r.denom())
            .to_u64()
            .ok_or_else(|| self.err("radicand too large"))?;
        let root = self.lift(QuadraticReal::sqrt(nm))?;
        Ok(root / QuadraticReal::from_bigint(r.denom().clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, qq: i64, r: i64, s: i64, d: u64) -> QuadraticReal {
        QuadraticReal::from_parts(p, qq, r, s, d).unwrap()
    }

    #[test]
    fn grammar_forms() {
        assert_eq!(
            parse_literal("3/4").unwrap(),
            QuadraticReal::from_ratio(3, 4)
        );
        assert_eq!(parse_literal("1/2+3/4*sqrt(5)").unwrap(), q(1, 2, 3, 4, 5));
        assert_eq!(parse_literal("tau").unwrap(), QuadraticReal::tau());
        assert_eq!(parse_literal("-1/sqrt(2)").unwrap(), q(0, 1, -1, 2, 2));
        assert_eq!(parse_literal("-2+2*sqrt(2)").unwrap(), q(-2, 1, 2, 1, 2));
        assert_eq!(parse_literal(" -1 / tau ").unwrap(), q(1, 2, -1, 2, 5));
        assert_eq!(parse_literal("sqrt(1/2)").unwrap(), q(0, 1, 1, 2, 2));
        assert_eq!(parse_literal("7-10/tau").unwrap(), q(12, 1, -5, 1, 5));
    }

    #[test]
    fn rejects() {
        for bad in [
            "",
            "1.5",
            "sqrt(2)+sqrt(3)",
            "sqrt(-1)",
            "pi",
            "1/0",
            "(1",
            "2 3",
        ] {
            assert!(parse_literal(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn display_roundtrip() {
        for x in [
            q(-2, 1, 2, 1, 2),
            q(1, 2, -1, 2, 5),
            q(0, 1, -3, 7, 11),
            QuadraticReal::from_ratio(-5, 3),
        ] {
            assert_eq!(parse_literal(&x.to_string()).unwrap(), x);
        }
    }
}
