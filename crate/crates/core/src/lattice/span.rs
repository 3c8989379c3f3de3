//! The translation module `𝔷 = ℤ⟨α, 𝒟⟩`: primitivity certificates and `𝔷 ∩ Λ_{α,m}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::hnf::column_hnf;
use super::lambda::{intersect_generators, lambda_basis, LatticeError, LatticeHNF, LatticeLabel};
use crate::dynamics::DigitSet;
use crate::exactnum::{to_field_vector, FieldVector, LaurentElem, PolynomialSpec};

/// One summand `coefficient · α^power · (d_digit − d_base)` of a primitivity certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateTerm {
    #[serde(serialize_with = "ser_big")]
    pub coefficient: BigInt,
    pub power: u32,
    pub digit: usize,
    pub base: usize,
}

fn ser_big<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Primitivity {
    /// The terms sum to exactly 1.
    Primitive { certificate: Vec<CertificateTerm> },
    /// No certificate among the first `bound + 1` rounds.
    Unknown { bound: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanClosure {
    /// `d − d_0` for the nonzero digits (the base digit is `0` after normalization).
    #[serde(skip)]
    pub digit_diffs: Vec<FieldVector>,
    pub primitivity: Primitivity,
    pub cap: usize,
}

impl SpanClosure {
    pub fn is_primitive(&self) -> bool {
        matches!(self.primitivity, Primitivity::Primitive { .. })
    }
}

/// Evaluates a certificate as a Laurent element.
pub fn certificate_value(terms: &[CertificateTerm], digits: &DigitSet) -> LaurentElem {
    terms.iter().fold(LaurentElem::zero(), |acc, t| {
        let diff = &digits.digits[t.digit] - &digits.digits[t.base];
        &acc + &diff.shift(t.power as i32).scale(&t.coefficient)
    })
}

/// Default number of generator rounds: `4n`.
pub fn default_cap(spec: &PolynomialSpec) -> usize {
    4 * spec.degree
}

/// Searches for an integer combination of `α^j(d − d′)`, `j ≤ cap`, equal to 1.
pub fn check_primitivity(spec: &PolynomialSpec, digits: &DigitSet, cap: usize) -> SpanClosure {
    let n = spec.degree;
    let base = digits.vectors.iter().position(|v| v.is_zero()).unwrap_or(0);
    let digit_diffs: Vec<FieldVector> =
        (0..digits.len()).filter(|&i| i != base).map(|i| &digits.vectors[i] - &digits.vectors[base]).collect();
    let one = FieldVector::from_int(n, 1);
    if let Some(i) = digits.vectors.iter().position(|v| v == &one) {
        return SpanClosure {
            digit_diffs,
            primitivity: Primitivity::Primitive {
                certificate: vec![CertificateTerm { coefficient: BigInt::one(), power: 0, digit: i, base }],
            },
            cap,
        };
    }
    let mut gens: Vec<(FieldVector, u32, usize)> = Vec::new();
    for round in 0..=cap {
        for i in (0..digits.len()).filter(|&i| i != base) {
            let v = (&digits.vectors[i] - &digits.vectors[base]).mul_alpha_pow(round as i32, spec);
            gens.push((v, round as u32, i));
        }
        let den = gens.iter().fold(BigInt::one(), |l, (v, _, _)| l.lcm(&v.denominator()));
        let den_q = BigRational::from_integer(den.clone());
        let cols: Vec<Vec<BigInt>> =
            gens.iter().map(|(v, _, _)| v.0.iter().map(|c| (c * &den_q).to_integer()).collect()).collect();
        let h = column_hnf(&cols, n);
        let target: Vec<BigInt> = one.0.iter().map(|c| (c * &den_q).to_integer()).collect();
        if let Some(c) = h.solve(&target) {
            let mut coeffs = vec![BigInt::zero(); gens.len()];
            for (ci, u) in c.iter().zip(&h.transform) {
                for (slot, x) in coeffs.iter_mut().zip(u) {
                    *slot += ci * x;
                }
            }
            let certificate: Vec<CertificateTerm> = gens
                .iter()
                .zip(coeffs)
                .filter(|(_, c)| !c.is_zero())
                .map(|((_, power, digit), coefficient)| CertificateTerm {
                    coefficient,
                    power: *power,
                    digit: *digit,
                    base,
                })
                .collect();
            debug_assert_eq!(to_field_vector(&certificate_value(&certificate, digits), spec), one);
            return SpanClosure { digit_diffs, primitivity: Primitivity::Primitive { certificate }, cap };
        }
    }
    SpanClosure { digit_diffs, primitivity: Primitivity::Unknown { bound: cap }, cap }
}

/// `𝔷 ∩ Λ_{α,m}`.
///
/// For primitive digit sets this is `Λ_{α,m}` itself. Otherwise the chain
/// `L_k ∩ Λ_{α,m}` with `L_k = span{α^j(d − d′) : j ≤ k}` is grown until it is unchanged for
/// `n` consecutive rounds; the result is flagged heuristic.
pub fn z_cap_lambda(spec: &PolynomialSpec, digits: &DigitSet, m: i32) -> Result<LatticeHNF, LatticeError> {
    let n = spec.degree;
    let closure = check_primitivity(spec, digits, default_cap(spec));
    let lambda = lambda_basis(spec, m)?;
    if closure.is_primitive() {
        return Ok(lambda.relabel(LatticeLabel::ZcapLambda(m)));
    }
    let base = digits.vectors.iter().position(|v| v.is_zero()).unwrap_or(0);
    let max_rounds = 8 * n + 8;
    let mut gens: Vec<(FieldVector, LaurentElem)> = Vec::new();
    let mut prev: Option<LatticeHNF> = None;
    let mut stable = 0;
    for round in 0..max_rounds {
        for i in (0..digits.len()).filter(|&i| i != base) {
            let l = (&digits.digits[i] - &digits.digits[base]).shift(round as i32);
            gens.push((to_field_vector(&l, spec), l));
        }
        let cur = match intersect_generators(&gens, &lambda, LatticeLabel::ZcapLambda(m)) {
            Ok(c) => c,
            Err(LatticeError::NotFullRank { .. }) => continue,
            Err(e) => return Err(e),
        };
        if prev.as_ref().is_some_and(|p| p.hnf == cur.hnf && p.denominator == cur.denominator) {
            stable += 1;
            if stable >= n {
                let mut out = cur;
                out.heuristic = true;
                return Ok(out);
            }
        } else {
            stable = 0;
        }
        prev = Some(cur);
    }
    Err(LatticeError::NotStabilized { rounds: max_rounds })
}
