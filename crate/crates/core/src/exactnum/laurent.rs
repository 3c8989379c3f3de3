//! Finite Laurent polynomials in the abstract root `a`, used as carriers for elements of ℤ[α, α⁻¹].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Element `Σ c_e α^e` with finitely many nonzero integer coefficients.
///
/// This is a carrier, not a canonical form: two different Laurent polynomials may denote the
/// same field element. Compare via [`crate::exactnum::to_field_vector`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentElem {
    terms: BTreeMap<i32, BigInt>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentParseError {
    #[error("empty expression")]
    Empty,
    #[error("unexpected character {found:?} at position {pos}")]
    Unexpected { pos: usize, found: char },
    #[error("integer literal out of range at position {pos}")]
    Overflow { pos: usize },
}

impl LaurentElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_int<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·α^e`.
    pub fn monomial<T: Into<BigInt>>(c: T, e: i32) -> Self {
        let mut out = Self::zero();
        out.add_term(e, c.into());
        out
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<I, T>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, T)>,
        T: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    /// Polynomial `Σ coeffs[i] α^i`.
    pub fn from_poly(coeffs: &[BigInt]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, c)| (i as i32, c.clone())))
    }

    pub fn add_term(&mut self, e: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i32) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Multiplication by `α^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect() }
    }

    /// Coefficient list `[c_lo, …, c_hi]` with `lo = min_exp`; empty for zero.
    pub fn dense(&self) -> (i32, Vec<BigInt>) {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
                for (e, c) in &self.terms {
                    v[(e - lo) as usize] = c.clone();
                }
                (lo, v)
            }
            _ => (0, Vec::new()),
        }
    }
}

impl Add for &LaurentElem {
    type Output = LaurentElem;
    fn add(self, rhs: &LaurentElem) -> LaurentElem {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentElem {
    type Output = LaurentElem;
    fn sub(self, rhs: &LaurentElem) -> LaurentElem {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Neg for &LaurentElem {
    type Output = LaurentElem;
    fn neg(self) -> LaurentElem {
        LaurentElem { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul for &LaurentElem {
    type Output = LaurentElem;
    fn mul(self, rhs: &LaurentElem) -> LaurentElem {
        let mut out = LaurentElem::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentElem {
    /// Descending exponents, e.g. `2*a^2 + a - 1` or `3*a^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let unit = abs.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => f.write_str("a")?,
                (1, false) => write!(f, "{abs}*a")?,
                (e, true) => write!(f, "a^{e}")?,
                (e, false) => write!(f, "{abs}*a^{e}")?,
            }
        }
        Ok(())
    }
}

struct Parser<'s> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'s str,
}

impl<'s> Parser<'s> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(i, _)| i)
    }

    fn unexpected(&self) -> LaurentParseError {
        match self.chars.get(self.pos) {
            Some(&(pos, found)) => LaurentParseError::Unexpected { pos, found },
            None => LaurentParseError::Unexpected { pos: self.src.len(), found: '\0' },
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().ok()
    }

    fn exponent(&mut self) -> Result<i32, LaurentParseError> {
        let mut sign = 1i64;
        match self.peek() {
            Some('-') => {
                sign = -1;
                self.pos += 1;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        let at = self.offset();
        let v = self.digits().ok_or_else(|| self.unexpected())?;
        i32::try_from(&v * sign).map_err(|_| LaurentParseError::Overflow { pos: at })
    }

    /// `a` or `a^e` after an optional coefficient.
    fn power(&mut self) -> Result<i32, LaurentParseError> {
        if self.peek() != Some('a') {
            return Err(self.unexpected());
        }
        self.pos += 1;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.exponent()
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<(i32, BigInt), LaurentParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.digits().ok_or_else(|| self.unexpected())?;
                if self.peek() == Some('*') {
                    self.pos += 1;
                    Ok((self.power()?, c))
                } else {
                    Ok((0, c))
                }
            }
            Some('a') => Ok((self.power()?, BigInt::one())),
            _ => Err(self.unexpected()),
        }
    }

    fn expr(&mut self) -> Result<LaurentElem, LaurentParseError> {
        if self.chars.is_empty() {
            return Err(LaurentParseError::Empty);
        }
        let mut out = LaurentElem::zero();
        let mut first = true;
        while self.pos < self.chars.len() {
            let mut sign = BigInt::one();
            match self.peek() {
                Some('+') => self.pos += 1,
                Some('-') => {
                    sign = -sign;
                    self.pos += 1;
                }
                _ if first => {}
                _ => return Err(self.unexpected()),
            }
            let (e, c) = self.term()?;
            out.add_term(e, sign * c);
            first = false;
        }
        Ok(out)
    }
}

impl FromStr for LaurentElem {
    type Err = LaurentParseError;

    /// Parses terms `c`, `a`, `c*a^e`, `a^e` joined by `+`/`-`, ignoring whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<(usize, char)> = s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Parser { chars, pos: 0, src: s }.expr()
    }
}

impl serde::Serialize for LaurentElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentElem {
        s.parse().unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(p("a - 1"), LaurentElem::from_terms([(1, 1), (0, -1)]));
        assert_eq!(p("2*a^-1"), LaurentElem::monomial(2, -1));
        assert_eq!(p(" - 3 + a^2 "), LaurentElem::from_terms([(2, 1), (0, -3)]));
        assert_eq!(p("a+a"), LaurentElem::monomial(2, 1));
        assert_eq!(p("0"), LaurentElem::zero());
        assert_eq!(p("a^+2"), LaurentElem::monomial(1, 2));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(p_err(""), LaurentParseError::Empty);
        assert!(matches!(p_err("2a"), LaurentParseError::Unexpected { pos: 1, .. }));
        assert!(matches!(p_err("a^"), LaurentParseError::Unexpected { .. }));
        assert!(matches!(p_err("1 +"), LaurentParseError::Unexpected { .. }));
        assert!(matches!(p_err("x"), LaurentParseError::Unexpected { .. }));
    }

    fn p_err(s: &str) -> LaurentParseError {
        s.parse::<LaurentElem>().unwrap_err()
    }

    #[test]
    fn display_round_trip() {
        for s in ["0", "a - 1", "2*a^-1", "-a^3 + 5*a - 7", "-1", "a^-2 + 3*a^-5"] {
            let x = p(s);
            assert_eq!(p(&x.to_string()), x, "{s}");
        }
        assert_eq!(p("a - 1").to_string(), "a - 1");
        assert_eq!(p("2*a^-1").to_string(), "2*a^-1");
    }

    #[test]
    fn ring_ops() {
        let x = p("a + 1");
        let y = p("a - 1");
        assert_eq!(&x * &y, p("a^2 - 1"));
        assert_eq!(&x - &x, LaurentElem::zero());
        assert_eq!(x.shift(-1), p("1 + a^-1"));
        assert_eq!((-&y).to_string(), "-a + 1");
    }
}
