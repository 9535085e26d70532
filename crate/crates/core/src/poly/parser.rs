//! Recursive-descent parser for polynomials in `s` and `t`.
//!
//! ```text
//! expr     := sign? term (('+' | '-') term)*
//! term     := factor ('*'? factor)*
//! factor   := base ('^' '-'? uint)?
//! base     := rational | 's' | 't' | '(' expr ')'
//! rational := uint ('/' uint)?
//! ```
//!
//! Juxtaposition (`2s`, `st`, `(s-1)(t-1)`) is multiplication. A negative
//! exponent is only allowed on a base that evaluates to a single monomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::BivariatePolynomial;
use crate::error::{Error, Result};

const MAX_EXPONENT: u32 = 10_000;

pub fn parse_polynomial(text: &str) -> Result<BivariatePolynomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { position: self.pos, message: message.to_string() }
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

    fn expr(&mut self) -> Result<BivariatePolynomial> {
        let negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(b'0'..=b'9' | b's' | b't' | b'('))
    }

    fn term(&mut self) -> Result<BivariatePolynomial> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.starts_factor() {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<BivariatePolynomial> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let negative = self.eat(b'-');
        self.skip_ws();
        let at = self.pos;
        let k = self.uint()?;
        let k: u32 = match u32::try_from(&k) {
            Ok(k) if k <= MAX_EXPONENT => k,
            _ => return Err(Error::Syntax { position: at, message: "exponent too large".into() }),
        };
        if negative {
            let inv = base.monomial_inverse().ok_or_else(|| Error::Syntax {
                position: at,
                message: "negative power of a non-monomial".into(),
            })?;
            Ok(inv.pow(k))
        } else {
            Ok(base.pow(k))
        }
    }

    fn base(&mut self) -> Result<BivariatePolynomial> {
        match self.peek() {
            Some(b's') => {
                self.pos += 1;
                Ok(BivariatePolynomial::s())
            }
            Some(b't') => {
                self.pos += 1;
                Ok(BivariatePolynomial::t())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'0'..=b'9') => {
                let num = self.uint()?;
                let value = if self.eat(b'/') {
                    self.skip_ws();
                    let at = self.pos;
                    let den = self.uint()?;
                    if den.is_zero() {
                        return Err(Error::Syntax { position: at, message: "zero denominator".into() });
                    }
                    BigRational::new(num, den)
                } else {
                    BigRational::from_integer(num)
                };
                Ok(BivariatePolynomial::constant(value))
            }
            Some(_) => Err(self.error("expected a number, 's', 't' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an unsigned integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn terms(p: &BivariatePolynomial) -> BTreeMap<(i64, i64), BigRational> {
        p.terms().map(|(&e, c)| (e, c.clone())).collect()
    }

    #[test]
    fn parses_example_polynomial() {
        let p = parse_polynomial("s*t^6+2").unwrap();
        assert_eq!(terms(&p), BTreeMap::from([((1, 6), q(1)), ((0, 0), q(2))]));
    }

    #[test]
    fn zero_is_empty() {
        assert!(parse_polynomial("0").unwrap().is_zero());
        assert!(parse_polynomial("s - s").unwrap().is_zero());
    }

    #[test]
    fn product_matches_convolution() {
        // Convolution oracle over explicit term lists.
        let a = [((0, 0), 1i64), ((1, 0), -2), ((2, 0), 1)]; // (s-1)^2
        let b = [((0, 1), 1i64), ((0, 2), 1)]; // t + t^2
        let mut expected: BTreeMap<(i64, i64), i64> = BTreeMap::new();
        for &((x1, y1), c1) in &a {
            for &((x2, y2), c2) in &b {
                *expected.entry((x1 + x2, y1 + y2)).or_default() += c1 * c2;
            }
        }
        expected.retain(|_, c| *c != 0);
        let p = parse_polynomial("(s-1)^2*(t+t^2)").unwrap();
        assert_eq!(p.len(), 6);
        let expected: BTreeMap<_, _> = expected.into_iter().map(|(e, c)| (e, q(c))).collect();
        assert_eq!(terms(&p), expected);
    }

    #[test]
    fn rationals_signs_and_juxtaposition() {
        let p = parse_polynomial("-3/4 s t^2 + 2(s-1)(t+1)").unwrap();
        let r = parse_polynomial("0 - 3/4*s*t^2 + 2*s*t + 2*s - 2*t - 2").unwrap();
        assert_eq!(p, r);
        let laurent = parse_polynomial("(2*s*t)^-2").unwrap();
        assert_eq!(terms(&laurent), BTreeMap::from([((-2, -2), BigRational::new(1.into(), 4.into()))]));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(parse_polynomial("s +"), Err(Error::Syntax { position: 3, .. })));
        assert!(matches!(parse_polynomial("s ** t"), Err(Error::Syntax { position: 3, .. })));
        assert!(matches!(parse_polynomial("(s + 1"), Err(Error::Syntax { position: 6, .. })));
        assert!(matches!(parse_polynomial("x"), Err(Error::Syntax { position: 0, .. })));
        assert!(matches!(parse_polynomial("(s+1)^-1"), Err(Error::Syntax { position: 7, .. })));
        assert!(matches!(parse_polynomial("1/0"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse_polynomial("s^99999999999"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn huge_coefficients_do_not_overflow() {
        let p = parse_polynomial("123456789012345678901234567890*s").unwrap();
        let c = p.coefficient((1, 0)).unwrap();
        assert_eq!(c.to_string(), "123456789012345678901234567890");
    }
}
