//! Schur–Cohn stability test in exact integer arithmetic.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

/// One reduction step of the Schur–Cohn recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurCohnStep {
    /// Degree of the polynomial examined at this step.
    pub degree: usize,
    /// Constant coefficient of that polynomial.
    #[serde(serialize_with = "super::ser_bigint")]
    pub constant: BigInt,
    /// Leading coefficient of that polynomial.
    #[serde(serialize_with = "super::ser_bigint")]
    pub leading: BigInt,
    /// Whether `|constant| < |leading|`.
    pub passed: bool,
}

/// Result of testing whether all roots of a polynomial lie strictly inside the unit disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurCohnReport {
    pub stable: bool,
    pub table: Vec<SchurCohnStep>,
}

/// Tests whether every root of `p` (ascending coefficients, nonzero leading coefficient)
/// lies strictly inside the open unit disk.
///
/// Each step replaces `p` by `(p_n p(z) - p_0 p*(z)) / z`, where `p*` is the reversed
/// polynomial. By Rouché, `p` is stable iff `|p_0| < |p_n|` and the reduced polynomial is stable.
pub fn schur_stable(p: &[BigInt]) -> SchurCohnReport {
    let mut cur: Vec<BigInt> = p.to_vec();
    while cur.len() > 1 && cur.last().is_some_and(|c| c.is_zero()) {
        cur.pop();
    }
    let mut table = Vec::new();
    while cur.len() > 1 {
        let n = cur.len() - 1;
        let p0 = cur[0].clone();
        let pn = cur[n].clone();
        let passed = p0.abs() < pn.abs();
        table.push(SchurCohnStep { degree: n, constant: p0.clone(), leading: pn.clone(), passed });
        if !passed {
            return SchurCohnReport { stable: false, table };
        }
        let next: Vec<BigInt> = (1..=n).map(|i| &pn * &cur[i] - &p0 * &cur[n - i]).collect();
        cur = next;
    }
    SchurCohnReport { stable: !cur.is_empty() && !cur[0].is_zero(), table }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn linear_cases() {
        assert!(schur_stable(&big(&[1, 2])).stable);
        assert!(!schur_stable(&big(&[2, 1])).stable);
        assert!(!schur_stable(&big(&[1, 1])).stable);
    }

    #[test]
    fn quadratic_with_roots_on_circle_is_unstable() {
        // z^2 + 1
        assert!(!schur_stable(&big(&[1, 0, 1])).stable);
        // (z - 1/2)(z + 1/3) * 6 = 6z^2 - z - 1
        assert!(schur_stable(&big(&[-1, -1, 6])).stable);
    }
}
