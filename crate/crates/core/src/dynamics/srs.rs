//! Shift radix systems `τ_r(z) = (z_2, …, z_n, −⌊r·z⌋)` and the embedding `ι_α` into `Λ_{α,0}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{solve_rational, to_field_vector, FieldVector, PolynomialSpec};
use crate::lattice::lambda0_generators;

/// Parameter `r = (a_n/a_0, …, a_1/a_0)` with its companion matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SrsParam {
    pub r: Vec<BigRational>,
    /// Rows of `M_r`: ones on the superdiagonal, last row `−r`.
    pub companion: Vec<Vec<BigRational>>,
}

impl SrsParam {
    pub fn new(r: Vec<BigRational>) -> Self {
        let n = r.len();
        let companion = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i + 1 == n {
                            -r[j].clone()
                        } else if j == i + 1 {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        SrsParam { r, companion }
    }

    pub fn from_spec(spec: &PolynomialSpec) -> Self {
        let n = spec.degree;
        let a0 = spec.a0().clone();
        Self::new((0..n).map(|i| BigRational::new(spec.coeffs[n - i].clone(), a0.clone())).collect())
    }

    pub fn dim(&self) -> usize {
        self.r.len()
    }

    pub fn dot(&self, z: &[BigInt]) -> BigRational {
        self.r
            .iter()
            .zip(z)
            .map(|(r, z)| r * BigRational::from_integer(z.clone()))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// `M_r · v` for a rational vector.
    pub fn apply_companion(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.companion
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).fold(BigRational::zero(), |s, t| s + t))
            .collect()
    }
}

pub fn srs_tau(p: &SrsParam, z: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = z[1..].to_vec();
    out.push(-p.dot(z).floor().to_integer());
    out
}

/// All `z′ = (t, z_1, …, z_{n−1})` with `τ_r(z′) = z`, in increasing `t`.
pub fn srs_preimages(p: &SrsParam, z: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = p.dim();
    let zn = BigRational::from_integer(z[n - 1].clone());
    // r·z′ = r_1 t + s with s = Σ_{i≥2} r_i z_{i−1}.
    let s = p.r[1..]
        .iter()
        .zip(&z[..n - 1])
        .map(|(r, x)| r * BigRational::from_integer(x.clone()))
        .fold(BigRational::zero(), |a, b| a + b);
    let r1 = &p.r[0];
    if r1.is_zero() {
        return Vec::new();
    }
    // −z_n ≤ r_1 t + s < −z_n + 1
    let a = (-&zn - &s) / r1;
    let b = (-&zn + BigRational::one() - &s) / r1;
    let (lo, hi) = if r1.is_positive() {
        // a ≤ t < b
        (a.ceil().to_integer(), b.ceil().to_integer() - 1)
    } else {
        // b < t ≤ a
        (b.floor().to_integer() + 1, a.floor().to_integer())
    };
    let mut out = Vec::new();
    let mut t = lo;
    while t <= hi {
        let mut v = Vec::with_capacity(n);
        v.push(t.clone());
        v.extend(z[..n - 1].iter().cloned());
        out.push(v);
        t += 1;
    }
    out
}

/// The SRS digit `|a_0|·{r·z}` of a point; it is the digit used by `T_α` at `ι(z)`.
pub fn srs_digit(p: &SrsParam, spec: &PolynomialSpec, z: &[BigInt]) -> BigInt {
    let x = p.dot(z);
    let frac = &x - x.floor();
    let d = frac * BigRational::from_integer(spec.abs_a0.clone());
    debug_assert!(d.is_integer());
    d.to_integer()
}

/// Basis `sgn(a_0)·w_i` of `Λ_{α,0}` used by `ι_α`.
pub fn iota_basis(spec: &PolynomialSpec) -> Vec<FieldVector> {
    let sign = spec.a0().signum();
    lambda0_generators(spec).iter().map(|w| to_field_vector(&w.scale(&sign), spec)).collect()
}

/// `ι_α(z) = sgn(a_0) Σ z_i w_i`.
pub fn iota(spec: &PolynomialSpec, z: &[BigInt]) -> FieldVector {
    iota_rational(spec, &z.iter().map(|x| BigRational::from_integer(x.clone())).collect::<Vec<_>>())
}

/// Linear extension of `ι_α` to rational vectors.
pub fn iota_rational(spec: &PolynomialSpec, z: &[BigRational]) -> FieldVector {
    iota_basis(spec).iter().zip(z).fold(FieldVector::zero(spec.degree), |acc, (w, c)| &acc + &w.scale(c))
}

/// Inverse of the linear map `ι_α` on ℚⁿ.
pub fn iota_inverse(spec: &PolynomialSpec, x: &FieldVector) -> Vec<BigRational> {
    solve_rational(&iota_basis(spec), x).expect("ι basis is nonsingular")
}

/// `ι⁻¹(x)` when it is an integer vector, i.e. when `x ∈ Λ_{α,0}`.
pub fn iota_inverse_integer(spec: &PolynomialSpec, x: &FieldVector) -> Option<Vec<BigInt>> {
    let v = iota_inverse(spec, x);
    v.iter().all(|c| c.is_integer()).then(|| v.iter().map(|c| c.to_integer()).collect())
}
