//! The map `T_α(x) = α⁻¹(x − d)` on ℤ[α] and its preimages.

use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use super::digits::DigitSet;
use crate::exactnum::{reduce_bottom, FieldVector, LaurentElem, PolynomialSpec};
use crate::lattice::{lattice_membership, LatticeHNF};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynamicsError {
    #[error("{0} is not in ℤ[α]")]
    NotInZAlpha(String),
    #[error("no digit has residue {residue}")]
    NoDigitMatches { residue: u64 },
    #[error("{count} digits have residue {residue}")]
    MultipleDigitsMatch { residue: u64, count: usize },
    #[error("{count} addresses exceed the limit {limit}")]
    DepthTooLarge { count: u128, limit: u128 },
    #[error("{0} is not in the requested shifted ring α^k ℤ[α⁻¹]")]
    NotInShiftedRing(String),
}

/// One step of `T_α`: returns the image (as a polynomial in α) and the digit index used.
pub fn t_alpha(
    x: &LaurentElem,
    spec: &PolynomialSpec,
    digits: &DigitSet,
) -> Result<(LaurentElem, usize), DynamicsError> {
    let rep = reduce_bottom(x, spec).into_rep().ok_or_else(|| DynamicsError::NotInZAlpha(x.to_string()))?;
    let residue = rep.coeff(0).mod_floor(&spec.abs_a0);
    let residue = u64::try_from(residue).expect("residue fits in u64");
    let idx = digits.digit_for_residue(residue).map_err(|count| {
        if count == 0 {
            DynamicsError::NoDigitMatches { residue }
        } else {
            DynamicsError::MultipleDigitsMatch { residue, count }
        }
    })?;
    let mut p = &rep - &digits.digits[idx];
    let c = p.coeff(0);
    let (s, r) = c.div_rem(spec.a0());
    debug_assert!(r.is_zero());
    let a = LaurentElem::from_poly(&spec.coeffs);
    p = &p - &a.scale(&s);
    debug_assert!(p.coeff(0).is_zero());
    Ok((p.shift(-1), idx))
}

/// `T_α^k(x)` together with the orbit `x, T(x), …, T^k(x)`.
pub fn t_alpha_orbit(
    x: &LaurentElem,
    k: usize,
    spec: &PolynomialSpec,
    digits: &DigitSet,
) -> Result<Vec<LaurentElem>, DynamicsError> {
    let mut orbit = vec![reduce_bottom(x, spec).into_rep().ok_or_else(|| DynamicsError::NotInZAlpha(x.to_string()))?];
    for _ in 0..k {
        let (next, _) = t_alpha(orbit.last().expect("nonempty"), spec, digits)?;
        orbit.push(next);
    }
    Ok(orbit)
}

/// All `αx + d`, in digit order.
pub fn preimages(x: &FieldVector, spec: &PolynomialSpec, digits: &DigitSet) -> Vec<FieldVector> {
    let ax = x.mul_alpha(spec);
    digits.vectors.iter().map(|d| &ax + d).collect()
}

/// `{αx + d : d ∈ 𝒟} ∩ L`, in digit order, paired with the digit index.
pub fn preimages_in_lambda(
    x: &FieldVector,
    spec: &PolynomialSpec,
    digits: &DigitSet,
    lattice: &LatticeHNF,
) -> Vec<(FieldVector, usize)> {
    preimages(x, spec, digits)
        .into_iter()
        .enumerate()
        .filter(|(_, y)| lattice_membership(y, lattice).is_some())
        .map(|(i, y)| (y, i))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::digits_from_strs;
    use crate::exactnum::{to_field_vector, validate_spec_i64};
    use crate::lattice::lambda_basis;

    fn p(s: &str) -> LaurentElem {
        s.parse().unwrap()
    }

    #[test]
    fn t_examples() {
        let ex1 = validate_spec_i64(&[-3, 2]).unwrap();
        let d = digits_from_strs(&ex1, &["0", "1", "2"]).unwrap();
        let fv = |x: &LaurentElem| to_field_vector(x, &ex1);
        let (y, i) = t_alpha(&p("-2"), &ex1, &d).unwrap();
        assert_eq!((fv(&y), i), (fv(&p("-2")), 1));
        let (y, i) = t_alpha(&p("0"), &ex1, &d).unwrap();
        assert!(y.is_zero() && i == 0);
        let orbit = t_alpha_orbit(&p("4"), 2, &ex1, &d).unwrap();
        assert_eq!(fv(&orbit[1]), fv(&p("2")));
        assert!(fv(&orbit[2]).is_zero());
    }

    #[test]
    fn non_standard_digit_sets_are_reported() {
        let ex1 = validate_spec_i64(&[-3, 2]).unwrap();
        let d = digits_from_strs(&ex1, &["0", "1", "3"]).unwrap();
        assert_eq!(t_alpha(&p("0"), &ex1, &d), Err(DynamicsError::MultipleDigitsMatch { residue: 0, count: 2 }));
        assert_eq!(t_alpha(&p("2"), &ex1, &d), Err(DynamicsError::NoDigitMatches { residue: 2 }));
    }

    #[test]
    fn preimage_examples() {
        let ex1 = validate_spec_i64(&[-3, 2]).unwrap();
        let d = digits_from_strs(&ex1, &["0", "1", "2"]).unwrap();
        let l = lambda_basis(&ex1, 0).unwrap();
        let fv = |s: &str| to_field_vector(&p(s), &ex1);
        let got: Vec<FieldVector> = preimages_in_lambda(&fv("0"), &ex1, &d, &l).into_iter().map(|(y, _)| y).collect();
        assert_eq!(got, vec![fv("0"), fv("2")]);
        let got: Vec<FieldVector> = preimages_in_lambda(&fv("-2"), &ex1, &d, &l).into_iter().map(|(y, _)| y).collect();
        assert_eq!(got, vec![fv("-2")]);
        let s43 = validate_spec_i64(&[-4, 3]).unwrap();
        let d = digits_from_strs(&s43, &["0", "1", "2", "a - 1"]).unwrap();
        let l = lambda_basis(&s43, 1).unwrap();
        assert!(preimages_in_lambda(&to_field_vector(&p("1"), &s43), &s43, &d, &l).is_empty());
    }
}
