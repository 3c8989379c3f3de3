//! Digit sets: validation, normalization, the shift `m`, and residue flags.

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{
    alpha_residue, beta_residue, reduce_bottom, reduce_top_shifted, to_field_vector, FieldVector, LaurentElem,
    PolynomialSpec,
};

/// Lowest shift tried when searching for the minimal `m`.
const M_SEARCH_FLOOR: i32 = -64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DigitError {
    #[error("digit set is empty")]
    Empty,
    #[error("digits {first} and {second} are equal as field elements")]
    DuplicateDigit { first: usize, second: usize },
    #[error("digit {index} ({digit}) is not in ℤ[α]")]
    DigitNotInZAlpha { index: usize, digit: String },
}

/// A validated digit set, normalized so that `digits[0] = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigitSet {
    /// Normalized digits as ℤ[α]-representatives (nonnegative exponents).
    #[serde(serialize_with = "ser_laurent_list")]
    pub digits: Vec<LaurentElem>,
    #[serde(skip)]
    pub vectors: Vec<FieldVector>,
    /// The input digits, before normalization.
    #[serde(serialize_with = "ser_laurent_list")]
    pub original: Vec<LaurentElem>,
    /// The digit subtracted during normalization, if `0` was not a digit.
    #[serde(serialize_with = "ser_laurent_opt")]
    pub translation: Option<LaurentElem>,
    /// Shift in use (minimal unless overridden).
    pub m: i32,
    /// Smallest `m` with `𝒟 ⊂ α^m ℤ[α⁻¹]`.
    pub minimal_m: i32,
    pub is_standard: bool,
    pub has_residue_system: bool,
    /// Classes of the digits in `ℤ[α]/αℤ[α] ≅ ℤ/|a_0|`.
    pub alpha_residues: Vec<u64>,
    /// Classes of `α^{−m}d` in `ℤ[α⁻¹]/α⁻¹ℤ[α⁻¹] ≅ ℤ/|a_n|`.
    pub beta_residues: Vec<u64>,
}

fn ser_laurent_list<S: serde::Serializer>(v: &[LaurentElem], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

fn ser_laurent_opt<S: serde::Serializer>(v: &Option<LaurentElem>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

impl DigitSet {
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Index of the digit with the given `ℤ/|a_0|` class, if exactly one exists.
    pub fn digit_for_residue(&self, r: u64) -> Result<usize, usize> {
        let hits: Vec<usize> = (0..self.len()).filter(|&i| self.alpha_residues[i] == r).collect();
        match hits.as_slice() {
            [i] => Ok(*i),
            other => Err(other.len()),
        }
    }
}

fn minimal_shift(d: &LaurentElem, spec: &PolynomialSpec) -> i32 {
    // With |a_n| = 1 all shifts α^m ℤ[α⁻¹] coincide, and m = 0 is used.
    if d.is_zero() || spec.abs_an_u64() == 1 {
        return i32::MIN;
    }
    // d ∈ ℤ[α] has a polynomial representative of degree e, so d ∈ α^e ℤ[α⁻¹].
    let mut k = d.max_exp().unwrap_or(0).max(0);
    while k > M_SEARCH_FLOOR && reduce_top_shifted(d, k - 1, spec).is_member() {
        k -= 1;
    }
    k
}

/// Validates and normalizes a digit set; `m_override` replaces the minimal shift when given.
pub fn validate_digits_with(
    spec: &PolynomialSpec,
    raw: &[LaurentElem],
    m_override: Option<i32>,
) -> Result<DigitSet, DigitError> {
    if raw.is_empty() {
        return Err(DigitError::Empty);
    }
    let mut reps = Vec::with_capacity(raw.len());
    for (index, d) in raw.iter().enumerate() {
        match reduce_bottom(d, spec).into_rep() {
            Some(r) => reps.push(r),
            None => return Err(DigitError::DigitNotInZAlpha { index, digit: d.to_string() }),
        }
    }
    let vecs: Vec<FieldVector> = reps.iter().map(|r| to_field_vector(r, spec)).collect();
    for i in 0..vecs.len() {
        for j in (i + 1)..vecs.len() {
            if vecs[i] == vecs[j] {
                return Err(DigitError::DuplicateDigit { first: i, second: j });
            }
        }
    }
    let translation = if vecs.iter().any(|v| v.is_zero()) { None } else { Some(reps[0].clone()) };
    let (digits, vectors): (Vec<LaurentElem>, Vec<FieldVector>) = match &translation {
        None => (reps, vecs),
        Some(t) => {
            let tv = to_field_vector(t, spec);
            (reps.iter().map(|r| r - t).collect(), vecs.iter().map(|v| v - &tv).collect())
        }
    };
    let minimal_m = digits.iter().map(|d| minimal_shift(d, spec)).max().filter(|&m| m != i32::MIN).unwrap_or(0);
    let m = m_override.unwrap_or(minimal_m);
    let alpha_residues: Vec<u64> = digits.iter().map(|d| alpha_residue(d, spec).expect("digit in ℤ[α]")).collect();
    let mut distinct = alpha_residues.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let is_standard = digits.len() as u64 == spec.abs_a0_u64() && distinct.len() == digits.len();
    let beta: Vec<Option<u64>> = digits.iter().map(|d| beta_residue(&d.shift(-m), spec)).collect();
    let beta_residues: Vec<u64> = beta.iter().map(|b| b.unwrap_or(u64::MAX)).collect();
    let an = spec.abs_an_u64();
    let has_residue_system = beta.iter().all(|b| b.is_some()) && (0..an).all(|r| beta_residues.contains(&r));
    Ok(DigitSet {
        digits,
        vectors,
        original: raw.to_vec(),
        translation,
        m,
        minimal_m,
        is_standard,
        has_residue_system,
        alpha_residues,
        beta_residues,
    })
}

/// Validates and normalizes a digit set with the minimal shift `m`.
pub fn validate_digits(spec: &PolynomialSpec, raw: &[LaurentElem]) -> Result<DigitSet, DigitError> {
    validate_digits_with(spec, raw, None)
}

/// Parses digit strings and validates them.
pub fn digits_from_strs(spec: &PolynomialSpec, raw: &[&str]) -> Result<DigitSet, DigitError> {
    let parsed: Vec<LaurentElem> = raw.iter().map(|s| s.parse().expect("valid Laurent literal")).collect();
    validate_digits(spec, &parsed)
}
