//! The expanding primitive polynomial `A` and its validation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use super::schur_cohn::{schur_stable, SchurCohnStep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("coefficient list is empty")]
    Empty,
    #[error("leading coefficient (last entry) must be nonzero")]
    LeadingZero,
    #[error("polynomial has degree zero")]
    DegreeZero,
    #[error("coefficients are not coprime (gcd {gcd})")]
    NotPrimitive { gcd: BigInt },
    #[error("polynomial is not expanding (some root has modulus ≤ 1)")]
    NotExpanding,
    #[error("polynomial is reducible: factor {factor}")]
    TriviallyReducible { factor: String },
    #[error("zero polynomial")]
    DegenerateInput,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Irreducibility {
    /// Checked by rational-root test and quadratic factor search (degree ≤ 4).
    Verified,
    /// Degree ≥ 5: assumed, not checked.
    Asserted,
}

/// Outcome of the expanding test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpandingReport {
    pub expanding: bool,
    /// Schur–Cohn table for the reversed polynomial `XⁿA(1/X)`.
    pub table: Vec<SchurCohnStep>,
    /// Advisory sufficient condition `|a_0| > |a_1| + ⋯ + |a_n|`.
    pub sufficient_condition: bool,
}

/// A validated expanding primitive irreducible polynomial `A = a_n Xⁿ + ⋯ + a_0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialSpec {
    /// `a_0, …, a_n` in ascending degree.
    #[serde(serialize_with = "super::ser_bigint_seq")]
    pub coeffs: Vec<BigInt>,
    pub degree: usize,
    #[serde(serialize_with = "super::ser_bigint")]
    pub abs_a0: BigInt,
    #[serde(serialize_with = "super::ser_bigint")]
    pub abs_an: BigInt,
    pub irreducibility: Irreducibility,
    pub expanding: ExpandingReport,
}

impl PolynomialSpec {
    pub fn a0(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn an(&self) -> &BigInt {
        &self.coeffs[self.degree]
    }

    pub fn is_monic(&self) -> bool {
        self.abs_an.is_one()
    }

    /// `|a_0|` as a machine integer (desk-scale inputs only).
    pub fn abs_a0_u64(&self) -> u64 {
        self.abs_a0.to_u64().expect("|a_0| fits in u64")
    }

    /// `|a_n|` as a machine integer.
    pub fn abs_an_u64(&self) -> u64 {
        self.abs_an.to_u64().expect("|a_n| fits in u64")
    }

    /// Coefficients as `i64`, when they fit.
    pub fn coeffs_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

fn strip(coeffs: &[BigInt]) -> Vec<BigInt> {
    let mut v = coeffs.to_vec();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Schur–Cohn expanding test with the advisory sufficient condition.
pub fn expanding_report(coeffs: &[BigInt]) -> Result<ExpandingReport, SpecError> {
    let a = strip(coeffs);
    if a.is_empty() {
        return Err(SpecError::DegenerateInput);
    }
    let sufficient_condition = a[0].abs() > a[1..].iter().map(|c| c.abs()).sum::<BigInt>();
    if a.len() == 1 || a[0].is_zero() {
        return Ok(ExpandingReport { expanding: false, table: Vec::new(), sufficient_condition });
    }
    let reversed: Vec<BigInt> = a.iter().rev().cloned().collect();
    let sc = schur_stable(&reversed);
    Ok(ExpandingReport { expanding: sc.stable, table: sc.table, sufficient_condition })
}

/// Whether every root of the polynomial lies strictly outside the unit circle.
pub fn is_expanding(coeffs: &[BigInt]) -> Result<bool, SpecError> {
    expanding_report(coeffs).map(|r| r.expanding)
}

/// Validates `coeffs = [a_0, …, a_n]`.
pub fn validate_spec(coeffs: &[BigInt]) -> Result<PolynomialSpec, SpecError> {
    if coeffs.is_empty() {
        return Err(SpecError::Empty);
    }
    if coeffs.last().is_none_or(|c| c.is_zero()) {
        return Err(SpecError::LeadingZero);
    }
    if coeffs.len() == 1 {
        return Err(SpecError::DegreeZero);
    }
    let gcd = coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !gcd.is_one() {
        return Err(SpecError::NotPrimitive { gcd });
    }
    let expanding = expanding_report(coeffs)?;
    if !expanding.expanding {
        return Err(SpecError::NotExpanding);
    }
    let degree = coeffs.len() - 1;
    let irreducibility = if degree <= 4 {
        if let Some(factor) = find_factor(coeffs) {
            return Err(SpecError::TriviallyReducible { factor });
        }
        Irreducibility::Verified
    } else {
        Irreducibility::Asserted
    };
    Ok(PolynomialSpec {
        coeffs: coeffs.to_vec(),
        degree,
        abs_a0: coeffs[0].abs(),
        abs_an: coeffs[degree].abs(),
        irreducibility,
        expanding,
    })
}

/// Convenience wrapper for machine-integer input.
pub fn validate_spec_i64(coeffs: &[i64]) -> Result<PolynomialSpec, SpecError> {
    let big: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    validate_spec(&big)
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let q = &n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

fn format_poly(c: &[BigInt]) -> String {
    let mut parts = Vec::new();
    for (i, v) in c.iter().enumerate().rev() {
        if v.is_zero() {
            continue;
        }
        parts.push(match i {
            0 => format!("{v}"),
            1 => format!("{v}*X"),
            _ => format!("{v}*X^{i}"),
        });
    }
    parts.join(" + ")
}

/// Remainder of `f` modulo `g` over ℚ is zero.
fn divides(g: &[BigInt], f: &[BigInt]) -> bool {
    let mut r: Vec<BigRational> = f.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let dg = g.len() - 1;
    let lead = BigRational::from_integer(g[dg].clone());
    while r.len() > dg {
        let top = r.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let q = top / &lead;
        let shift = r.len() - dg;
        for (j, gj) in g.iter().enumerate().take(dg) {
            r[shift + j] -= &q * BigRational::from_integer(gj.clone());
        }
    }
    r.iter().all(|c| c.is_zero())
}

/// Searches for a linear factor (rational roots) and, for degree 4, a quadratic factor
/// with coefficients inside the Mignotte bound `|b_1| ≤ 2‖A‖₂`.
fn find_factor(a: &[BigInt]) -> Option<String> {
    let n = a.len() - 1;
    let a0 = &a[0];
    let an = &a[n];
    if n >= 2 {
        for p in positive_divisors(a0) {
            for q in positive_divisors(an) {
                if !p.gcd(&q).is_one() {
                    continue;
                }
                for sign in [1, -1] {
                    let num: BigInt = &p * BigInt::from(sign);
                    // Σ a_i num^i q^{n-i}
                    let val: BigInt =
                        a.iter().enumerate().map(|(i, c)| c * num.pow(i as u32) * q.pow((n - i) as u32)).sum();
                    if val.is_zero() {
                        return Some(format_poly(&[-num, q.clone()]));
                    }
                }
            }
        }
    }
    if n == 4 {
        let norm2: BigInt = a.iter().map(|c| c * c).sum();
        let bound: BigInt = BigInt::from(2) * (norm2.sqrt() + BigInt::one());
        for b2 in positive_divisors(an) {
            for b0abs in positive_divisors(a0) {
                for b0 in [b0abs.clone(), -b0abs.clone()] {
                    let mut b1 = -bound.clone();
                    while b1 <= bound {
                        let g = [b0.clone(), b1.clone(), b2.clone()];
                        if divides(&g, a) {
                            return Some(format_poly(&g));
                        }
                        b1 += 1;
                    }
                }
            }
        }
    }
    None
}
