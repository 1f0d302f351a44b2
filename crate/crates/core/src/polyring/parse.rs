//! Parser for the polynomial expression language.
//!
//! ```text
//! expr   := ['-'|'+'] term (('+'|'-') term)*
//! term   := coeff ('*' factor)* | factor ('*' factor)*
//! factor := var ('^' nat)?
//! var    := 'x0' | 'x1' | 'x2' | 'x3' | 't'
//! coeff  := int ('/' posint)?
//! ```
//!
//! Whitespace between tokens is ignored. `Display` on [`Poly`] prints in a
//! form this grammar accepts.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::monomial::{Monomial, VAR_NAMES};
use super::{Poly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { pos: usize, name: String },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn number(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.syntax("expected a number");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("valid digits"))
    }

    fn coeff(&mut self) -> Result<Rational, ParseError> {
        let num = self.number()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den_pos = self.pos;
            let den = self.number()?;
            if den.is_zero() {
                return Err(ParseError::Syntax { pos: den_pos, msg: "zero denominator".into() });
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn factor(&mut self) -> Result<Monomial, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.syntax("expected a variable");
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let Some(index) = VAR_NAMES.iter().position(|v| *v == name) else {
            return Err(ParseError::UnknownVariable { pos: start, name: name.to_string() });
        };
        let mut exp = 1u32;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            let n = self.number()?;
            exp = u32::try_from(&n)
                .ok()
                .filter(|&e| e <= u16::MAX as u32 / 4)
                .ok_or(ParseError::Syntax { pos: at, msg: "exponent too large".into() })?;
        }
        let mut e = [0u16; 5];
        e[index] = exp as u16;
        Ok(Monomial(e))
    }

    fn term(&mut self) -> Result<(Monomial, Rational), ParseError> {
        let mut coeff = Rational::one();
        let mut mono = Monomial::ONE;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => coeff = self.coeff()?,
            Some(c) if c.is_ascii_alphabetic() => mono = self.factor()?,
            Some(_) => return self.syntax("expected a term"),
            None => return self.syntax("unexpected end of input"),
        }
        while self.peek() == Some(b'*') {
            self.pos += 1;
            mono = mono.mul(&self.factor()?);
        }
        Ok((mono, coeff))
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut out = Poly::zero();
        let mut sign = Rational::one();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, c * &sign);
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = Rational::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -Rational::one();
                }
                None => return Ok(out),
                Some(_) => return self.syntax("expected `+`, `-` or end of input"),
            }
        }
    }
}

/// Parse a polynomial in `x0..x3, t`.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    Parser { src: text.as_bytes(), pos: 0 }.expr()
}

impl std::str::FromStr for Poly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let q = parse_poly("x0^2*x2 - x1^2").unwrap();
        assert_eq!(q.num_terms(), 2);
        assert!(parse_poly("x0*x1 - x1*x0").unwrap().is_zero());
        let c = parse_poly("1/2*x3^3 + 1/2*x3^3").unwrap();
        assert_eq!(c.num_terms(), 1);
        assert_eq!(c.to_string(), "x3^3");
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(parse_poly(" x0 ^ 2 *x1-3 / 4 ").unwrap(), parse_poly("x0^2*x1 - 3/4").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_poly("x0 + y1"), Err(ParseError::UnknownVariable { pos: 5, name: "y1".into() }));
        assert!(matches!(parse_poly("x4"), Err(ParseError::UnknownVariable { pos: 0, .. })));
        assert!(matches!(parse_poly("x0 +"), Err(ParseError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("x0 x1"), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_poly("1/0"), Err(ParseError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_poly(""), Err(ParseError::Syntax { .. })));
    }
}
