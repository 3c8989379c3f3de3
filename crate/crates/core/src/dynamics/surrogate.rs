//! The β-adic expansion (β = α⁻¹) used as a real stand-in for the non-archimedean coordinate.

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::tmap::DynamicsError;
use crate::exactnum::{reduce_top, LaurentElem, PolynomialSpec};

/// `x = Σ_{i≥0} digits[i] β^{start_exponent + i}` up to `β^{start_exponent + J}ℤ[β]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurrogateExpansion {
    pub start_exponent: i32,
    pub digits: Vec<u64>,
    /// `Σ digits[i] |a_n|^{−(start_exponent + i)}`.
    pub value: f64,
}

/// Greedy β-adic expansion of `x ∈ β^{start}ℤ[β]` with `count` digits.
///
/// Each digit is the constant coefficient of the ℤ[β]-representative modulo `|a_n|`; the
/// remainder is multiplied by α. Starting lower than the valuation only prepends zeros, so the
/// value does not depend on `start` once it is small enough.
pub fn surrogate(
    x: &LaurentElem,
    spec: &PolynomialSpec,
    start: i32,
    count: usize,
) -> Result<SurrogateExpansion, DynamicsError> {
    let modulus = spec.abs_an.clone();
    let base = spec.abs_an.to_f64().expect("finite");
    let mut y =
        reduce_top(&x.shift(start), spec).into_rep().ok_or_else(|| DynamicsError::NotInShiftedRing(x.to_string()))?;
    let mut digits = Vec::with_capacity(count);
    let mut value = 0.0;
    for i in 0..count {
        let b = y.coeff(0).mod_floor(&modulus);
        let b_u = b.to_u64().expect("digit fits in u64");
        digits.push(b_u);
        if b_u != 0 {
            value += b_u as f64 * base.powi(-(start + i as i32));
        }
        let mut rest = y.clone();
        rest.add_term(0, -b);
        y = reduce_top(&rest.shift(1), spec).into_rep().expect("remainder lies in βℤ[β]");
    }
    Ok(SurrogateExpansion { start_exponent: start, digits, value })
}

/// A start exponent valid for `x`, and no larger than `bound`.
pub fn surrogate_start(x: &LaurentElem, bound: i32) -> i32 {
    bound.min(-x.max_exp().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::validate_spec_i64;

    fn p(s: &str) -> LaurentElem {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let ex1 = validate_spec_i64(&[-3, 2]).unwrap();
        let s = surrogate(&p("1"), &ex1, 0, 10).unwrap();
        assert_eq!(s.digits, vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(s.value, 1.0);
        let s = surrogate(&p("3"), &ex1, 0, 40).unwrap();
        assert!(s.digits.iter().all(|&b| b == 1));
        assert!((s.value - 2.0).abs() < 1e-9);
        let s = surrogate(&p("2"), &ex1, 0, 40).unwrap();
        assert_eq!(&s.digits[..4], &[0, 1, 1, 1]);
        assert!((s.value - 1.0).abs() < 1e-9);
        assert!(matches!(surrogate(&p("a"), &ex1, 0, 4), Err(DynamicsError::NotInShiftedRing(_))));
    }

    #[test]
    fn earlier_start_prepends_zeros() {
        let ex1 = validate_spec_i64(&[-3, 2]).unwrap();
        let a = surrogate(&p("3"), &ex1, 0, 30).unwrap();
        let b = surrogate(&p("3"), &ex1, -3, 33).unwrap();
        assert_eq!(&b.digits[..3], &[0, 0, 0]);
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn monic_is_trivial() {
        let two = validate_spec_i64(&[-2, 1]).unwrap();
        let s = surrogate(&p("5*a^2 + 1"), &two, -2, 8).unwrap();
        assert!(s.digits.iter().all(|&b| b == 0));
        assert_eq!(s.value, 0.0);
    }
}
