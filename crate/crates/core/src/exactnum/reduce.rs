//! Membership tests for ℤ[α] and ℤ[α⁻¹] by eliminating extreme terms with the relation `A(α) = 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::laurent::LaurentElem;
use super::poly::PolynomialSpec;

/// Verdict of a membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Member, with a representative using only the allowed exponents.
    Member(LaurentElem),
    /// The coefficient at `exponent` was not divisible by the required leading/constant term.
    NotMember { exponent: i32, coefficient: BigInt },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }

    pub fn rep(&self) -> Option<&LaurentElem> {
        match self {
            Membership::Member(r) => Some(r),
            Membership::NotMember { .. } => None,
        }
    }

    pub fn into_rep(self) -> Option<LaurentElem> {
        match self {
            Membership::Member(r) => Some(r),
            Membership::NotMember { .. } => None,
        }
    }
}

/// Decides `x ∈ ℤ[α]`. On success the representative has only exponents ≥ 0.
///
/// The lowest term `c·α^e` (`e < 0`) must satisfy `a_0 | c`; it is replaced using
/// `a_0·α⁻¹ = −(a_1 + a_2α + ⋯ + a_nα^{n−1})`. Each step raises the minimal exponent.
pub fn reduce_bottom(x: &LaurentElem, spec: &PolynomialSpec) -> Membership {
    let mut cur = x.clone();
    let a0 = spec.a0();
    while let Some(e) = cur.min_exp() {
        if e >= 0 {
            break;
        }
        let c = cur.coeff(e);
        let (q, r) = c.div_rem(a0);
        if !r.is_zero() {
            return Membership::NotMember { exponent: e, coefficient: c };
        }
        cur.add_term(e, -c);
        for (i, ai) in spec.coeffs.iter().enumerate().skip(1) {
            cur.add_term(e + i as i32, -(&q * ai));
        }
    }
    Membership::Member(cur)
}

/// Decides `x ∈ ℤ[α⁻¹]`. On success the representative has only exponents ≤ 0.
///
/// The top term `c·α^e` (`e > 0`) must satisfy `a_n | c`; it is replaced using
/// `a_n·α = −(a_{n−1} + a_{n−2}α⁻¹ + ⋯ + a_0α^{1−n})`.
pub fn reduce_top(x: &LaurentElem, spec: &PolynomialSpec) -> Membership {
    let mut cur = x.clone();
    let n = spec.degree;
    let an = spec.an();
    while let Some(e) = cur.max_exp() {
        if e <= 0 {
            break;
        }
        let c = cur.coeff(e);
        let (q, r) = c.div_rem(an);
        if !r.is_zero() {
            return Membership::NotMember { exponent: e, coefficient: c };
        }
        cur.add_term(e, -c);
        for (i, ai) in spec.coeffs.iter().enumerate().take(n) {
            cur.add_term(e - (n - i) as i32, -(&q * ai));
        }
    }
    Membership::Member(cur)
}

/// Decides `x ∈ α^k ℤ[α⁻¹]` by testing `α^{−k}x`; the representative is of `α^{−k}x`.
pub fn reduce_top_shifted(x: &LaurentElem, k: i32, spec: &PolynomialSpec) -> Membership {
    reduce_top(&x.shift(-k), spec)
}

fn residue(c: &BigInt, modulus: &BigInt) -> u64 {
    c.mod_floor(modulus).to_u64().expect("residue fits in u64")
}

/// Class of `x ∈ ℤ[α]` in `ℤ[α]/αℤ[α] ≅ ℤ/|a_0|`, or `None` if `x ∉ ℤ[α]`.
pub fn alpha_residue(x: &LaurentElem, spec: &PolynomialSpec) -> Option<u64> {
    reduce_bottom(x, spec).into_rep().map(|r| residue(&r.coeff(0), &spec.abs_a0))
}

/// Class of `x ∈ ℤ[α⁻¹]` in `ℤ[α⁻¹]/α⁻¹ℤ[α⁻¹] ≅ ℤ/|a_n|`, or `None` if `x ∉ ℤ[α⁻¹]`.
pub fn beta_residue(x: &LaurentElem, spec: &PolynomialSpec) -> Option<u64> {
    reduce_top(x, spec).into_rep().map(|r| residue(&r.coeff(0), &spec.abs_an))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{to_field_vector, validate_spec_i64};

    fn p(s: &str) -> LaurentElem {
        s.parse().unwrap()
    }

    #[test]
    fn bottom_examples() {
        let ex1 = validate_spec_i64(&[-3, 2]).unwrap();
        assert!(!reduce_bottom(&p("a^-1"), &ex1).is_member());
        assert_eq!(reduce_bottom(&p("a - 1"), &ex1), Membership::Member(p("a - 1")));
        assert_eq!(reduce_bottom(&p("3*a^-1"), &ex1), Membership::Member(p("2")));
    }

    #[test]
    fn top_examples() {
        let s43 = validate_spec_i64(&[-4, 3]).unwrap();
        assert!(reduce_top_shifted(&p("a - 1"), 1, &s43).is_member());
        assert!(!reduce_top(&p("a - 1"), &s43).is_member());
        let ex1 = validate_spec_i64(&[-3, 2]).unwrap();
        assert!(reduce_top(&p("1"), &ex1).is_member());
        assert!(!reduce_top(&p("a"), &ex1).is_member());
    }

    #[test]
    fn representatives_are_equal_in_field() {
        let ex2 = validate_spec_i64(&[3, 2, 2]).unwrap();
        let x = p("6*a^-2 + 4*a^-1 + a^3");
        let rep = reduce_bottom(&x, &ex2).into_rep().unwrap();
        assert!(rep.min_exp().unwrap() >= 0);
        assert_eq!(to_field_vector(&rep, &ex2), to_field_vector(&x, &ex2));
    }

    #[test]
    fn residues() {
        let ex1 = validate_spec_i64(&[-3, 2]).unwrap();
        assert_eq!(alpha_residue(&p("-2"), &ex1), Some(1));
        assert_eq!(beta_residue(&p("3"), &ex1), Some(1));
        assert_eq!(alpha_residue(&p("a^-1"), &ex1), None);
    }
}
