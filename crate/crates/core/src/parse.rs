//! Input grammar for polynomials in `Q[t]`:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (('*'|'/') power | power)*
//! power  := atom ['^' integer]
//! atom   := integer | 't' | '(' expr ')'
//! ```
//!
//! Juxtaposition multiplies (`2t^2`), and `/` only divides by nonzero constants,
//! which is how rationals `a/b` are written.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyring::{qt_ring, Poly, PolyRing};
use crate::ring::{Field, Rationals};

const MAX_EXPONENT: u64 = 10_000;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: PolyRing<Rationals>,
}

fn err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        if digits.is_empty() {
            return err(format!("expected an integer at offset {start}"));
        }
        Ok(digits.parse().expect("nonempty digit string"))
    }

    fn expr(&mut self) -> Result<Poly<BigRational>> {
        let mut acc = if self.eat(b'-') {
            let first = self.term()?;
            self.ring.neg(&first)
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                let rhs = self.term()?;
                acc = self.ring.add(&acc, &rhs);
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                acc = self.ring.sub(&acc, &rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly<BigRational>> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.power()?;
                acc = self.ring.mul(&acc, &rhs);
            } else if self.eat(b'/') {
                let at = self.pos;
                let den = self.power()?;
                match den.degree() {
                    Some(0) => {
                        let inv = Rationals.inv(&den.coeffs()[0])?;
                        acc = self.ring.scale(&acc, &inv);
                    }
                    None => return Err(Error::DivisionByZero),
                    Some(_) => return err(format!("division by a nonconstant polynomial at offset {at}")),
                }
            } else if matches!(self.peek(), Some(b't' | b'(' | b'0'..=b'9')) {
                let rhs = self.power()?;
                acc = self.ring.mul(&acc, &rhs);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Poly<BigRational>> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            let e: u64 = e.try_into().ok().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| {
                Error::InvalidInput(format!("exponent must be at most {MAX_EXPONENT}"))
            })?;
            return Ok(self.ring.pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly<BigRational>> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(self.ring.var_poly())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return err(format!("expected ')' at offset {}", self.pos));
                }
                Ok(inner)
            }
            Some(b'0'..=b'9') => {
                let n = self.integer()?;
                Ok(self.ring.constant(BigRational::from_integer(n)))
            }
            Some(ch) => err(format!("unexpected '{}' at offset {}", ch as char, self.pos)),
            None => err("unexpected end of input"),
        }
    }
}

/// Parse a polynomial in `t` with rational coefficients.
pub fn parse_qt(src: &str) -> Result<Poly<BigRational>> {
    let mut parser = Parser { src: src.as_bytes(), pos: 0, ring: qt_ring() };
    let poly = parser.expr()?;
    if parser.peek().is_some() {
        return err(format!("trailing input at offset {}", parser.pos));
    }
    Ok(poly)
}

/// Parse a rational constant (`7`, `-3/4`) through the same grammar.
pub fn parse_rational(src: &str) -> Result<BigRational> {
    let p = parse_qt(src)?;
    match p.degree() {
        None => Ok(BigRational::zero()),
        Some(0) => Ok(p.coeffs()[0].clone()),
        Some(_) => err("expected a constant"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(s: &str) -> String {
        qt_ring().render(&parse_qt(s).unwrap())
    }

    #[test]
    fn accepts_examples() {
        let r = qt_ring();
        assert_eq!(parse_qt("t").unwrap(), r.from_i64s(&[0, 1]));
        assert_eq!(parse_qt("t^2+1").unwrap(), r.from_i64s(&[1, 0, 1]));
        assert_eq!(parse_qt("t^3").unwrap(), r.from_i64s(&[0, 0, 0, 1]));
        assert_eq!(parse_qt("(t+1)^2 - 2t").unwrap(), r.from_i64s(&[1, 0, 1]));
        assert_eq!(parse_qt("-3*t*(t - 1)").unwrap(), r.from_i64s(&[0, 3, -3]));
        assert_eq!(parse_qt(" 2 ( t + 1 ) ").unwrap(), r.from_i64s(&[2, 2]));
        let half_t = r.scale(&r.var_poly(), &BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_qt("t/2").unwrap(), half_t);
        assert_eq!(parse_qt("1/2 t").unwrap(), half_t);
        assert_eq!(parse_rational("-3/4").unwrap(), BigRational::new((-3).into(), 4.into()));
        assert_eq!(show("t^2 - t^2"), "0");
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "t^", "(t+1", "t)", "x", "t/t", "1/0", "t^-1", "t^100000", "2 +", "t**2"] {
            assert!(parse_qt(bad).is_err(), "{bad:?} should not parse");
        }
        assert!(parse_rational("t+1").is_err());
    }
}
