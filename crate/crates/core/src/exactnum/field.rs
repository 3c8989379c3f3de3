//! Canonical coordinates of ℚ(α) in the power basis `1, α, …, α^{n−1}`.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::laurent::LaurentElem;
use super::poly::PolynomialSpec;

/// Exact element of ℚ(α); equality of field elements is equality of these vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FieldVector(pub Vec<BigRational>);

fn rat(c: &BigInt) -> BigRational {
    BigRational::from_integer(c.clone())
}

impl FieldVector {
    pub fn zero(n: usize) -> Self {
        FieldVector(vec![BigRational::zero(); n])
    }

    pub fn from_rational(n: usize, q: BigRational) -> Self {
        let mut v = Self::zero(n);
        v.0[0] = q;
        v
    }

    pub fn from_int(n: usize, c: impl Into<BigInt>) -> Self {
        Self::from_rational(n, BigRational::from_integer(c.into()))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        FieldVector(self.0.iter().map(|c| c * s).collect())
    }

    pub fn scale_int(&self, s: &BigInt) -> Self {
        self.scale(&rat(s))
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }

    /// Multiplication by α: `α^n = −(a_0 + ⋯ + a_{n−1}α^{n−1}) / a_n`.
    pub fn mul_alpha(&self, spec: &PolynomialSpec) -> Self {
        let n = spec.degree;
        let top = self.0[n - 1].clone() / rat(spec.an());
        let mut out = Vec::with_capacity(n);
        out.push(BigRational::zero());
        out.extend(self.0[..n - 1].iter().cloned());
        for (i, slot) in out.iter_mut().enumerate() {
            *slot -= &top * rat(&spec.coeffs[i]);
        }
        FieldVector(out)
    }

    /// Division by α: `α^{−1} = −(a_1 + a_2α + ⋯ + a_nα^{n−1}) / a_0`.
    pub fn div_alpha(&self, spec: &PolynomialSpec) -> Self {
        let n = spec.degree;
        let low = self.0[0].clone() / rat(spec.a0());
        let mut out: Vec<BigRational> = self.0[1..].to_vec();
        out.push(BigRational::zero());
        for (i, slot) in out.iter_mut().enumerate() {
            *slot -= &low * rat(&spec.coeffs[i + 1]);
        }
        debug_assert_eq!(out.len(), n);
        FieldVector(out)
    }

    /// Multiplication by `α^k` for any integer `k`.
    pub fn mul_alpha_pow(&self, k: i32, spec: &PolynomialSpec) -> Self {
        let mut x = self.clone();
        if k >= 0 {
            for _ in 0..k {
                x = x.mul_alpha(spec);
            }
        } else {
            for _ in 0..(-k) {
                x = x.div_alpha(spec);
            }
        }
        x
    }

    /// Field product.
    pub fn mul(&self, other: &Self, spec: &PolynomialSpec) -> Self {
        // Horner in α over the coordinates of `other`.
        let n = spec.degree;
        let mut acc = FieldVector::zero(n);
        for c in other.0.iter().rev() {
            acc = acc.mul_alpha(spec);
            acc = &acc + &self.scale(c);
        }
        acc
    }

    /// Field inverse, by solving the linear system of multiplication by `self`.
    pub fn inverse(&self, spec: &PolynomialSpec) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = spec.degree;
        // Columns: self·α^j.
        let mut cols = Vec::with_capacity(n);
        let mut cur = self.clone();
        for _ in 0..n {
            cols.push(cur.clone());
            cur = cur.mul_alpha(spec);
        }
        let mut rhs = FieldVector::zero(n);
        rhs.0[0] = BigRational::one();
        solve_rational(&cols, &rhs).map(FieldVector)
    }
}

/// Solves `Σ_j x_j cols[j] = rhs` over ℚ for a square nonsingular system.
pub fn solve_rational(cols: &[FieldVector], rhs: &FieldVector) -> Option<Vec<BigRational>> {
    let n = rhs.dim();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c.0[i].clone()).collect();
            row.push(rhs.0[i].clone());
            row
        })
        .collect();
    let k = cols.len();
    if k != n {
        return None;
    }
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

impl Add for &FieldVector {
    type Output = FieldVector;
    fn add(self, rhs: &FieldVector) -> FieldVector {
        FieldVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &FieldVector {
    type Output = FieldVector;
    fn sub(self, rhs: &FieldVector) -> FieldVector {
        FieldVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &FieldVector {
    type Output = FieldVector;
    fn neg(self) -> FieldVector {
        FieldVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Canonical coordinates of a Laurent element.
pub fn to_field_vector(x: &LaurentElem, spec: &PolynomialSpec) -> FieldVector {
    let n = spec.degree;
    let (lo, dense) = x.dense();
    let mut acc = FieldVector::zero(n);
    for c in dense.iter().rev() {
        acc = acc.mul_alpha(spec);
        acc.0[0] += rat(c);
    }
    acc.mul_alpha_pow(lo, spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::validate_spec_i64;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn examples() {
        let ex1 = validate_spec_i64(&[-3, 2]).unwrap();
        let ex2 = validate_spec_i64(&[3, 2, 2]).unwrap();
        assert!(to_field_vector(&LaurentElem::zero(), &ex2).is_zero());
        assert_eq!(to_field_vector(&LaurentElem::monomial(1, 2), &ex1), FieldVector(vec![q(9, 4)]));
        assert_eq!(to_field_vector(&LaurentElem::monomial(1, 2), &ex2), FieldVector(vec![q(-3, 2), q(-1, 1)]));
    }

    #[test]
    fn alpha_and_inverse() {
        let ex2 = validate_spec_i64(&[3, 2, 2]).unwrap();
        let x = to_field_vector(&"3*a^-2 + a - 4".parse().unwrap(), &ex2);
        assert_eq!(x.mul_alpha(&ex2).div_alpha(&ex2), x);
        let inv = x.inverse(&ex2).unwrap();
        assert_eq!(x.mul(&inv, &ex2), FieldVector::from_int(2, 1));
    }
}
