//! Integer-coordinate evaluation of `T_α` and its preimages on `Λ_{α,m}`.
//!
//! Elements of `Λ_{α,m}` are stored as `i64` coordinates in its HNF basis. Multiplication by
//! α (resp. α⁻¹) and the digits are rational in these coordinates, so each step is one small
//! integer matrix product followed by an exact divisibility test. The exact `FieldVector`
//! routines in [`super::tmap`] serve as the cross-check.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use super::digits::DigitSet;
use crate::exactnum::EmbeddingData;
use crate::exactnum::{solve_rational, FieldVector, LaurentElem, PolynomialSpec};
use crate::lattice::{lattice_membership, LatticeHNF};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("lattice coordinates exceed 64-bit range")]
    Overflow,
    #[error("digit {0} is not in Λ_(m+1)")]
    DigitOutsideLattice(usize),
    #[error("no unique digit for residue {0}")]
    DigitSelection(u64),
    #[error("matrix entry does not fit in 64 bits")]
    LargeMatrix,
}

/// Rational matrix `(1/den)·num`, rows of `num` stored contiguously.
#[derive(Clone, Debug)]
struct RatMap {
    den: i128,
    num: Vec<Vec<i128>>,
    shifts: Vec<Vec<i128>>,
}

impl RatMap {
    /// Columns `cols[j]` and translation vectors `shifts[d]` given as rationals.
    fn new(cols: &[Vec<BigRational>], shifts: &[Vec<BigRational>]) -> Result<Self, EngineError> {
        let den = cols.iter().chain(shifts).flatten().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let to_int = |c: &BigRational| -> Result<i128, EngineError> {
            (c * BigRational::from_integer(den.clone())).to_integer().to_i128().ok_or(EngineError::LargeMatrix)
        };
        let n = cols.len();
        let mut num = vec![vec![0i128; n]; n];
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col.iter().enumerate() {
                num[i][j] = to_int(c)?;
            }
        }
        let shifts = shifts
            .iter()
            .map(|s| s.iter().map(to_int).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RatMap { den: den.to_i128().ok_or(EngineError::LargeMatrix)?, num, shifts })
    }

    /// `(num·x + sign·shifts[d]) / den` if integral.
    fn apply(&self, x: &[i64], d: usize, sign: i128) -> Result<Option<Vec<i64>>, EngineError> {
        let mut out = Vec::with_capacity(x.len());
        for (row, s) in self.num.iter().zip(&self.shifts[d]) {
            let mut acc: i128 = sign * s;
            for (a, &b) in row.iter().zip(x) {
                acc = a.checked_mul(b as i128).and_then(|p| acc.checked_add(p)).ok_or(EngineError::Overflow)?;
            }
            if acc % self.den != 0 {
                return Ok(None);
            }
            out.push(i64::try_from(acc / self.den).map_err(|_| EngineError::Overflow)?);
        }
        Ok(Some(out))
    }
}

/// Fast tree engine on `Λ_{α,m}` for a fixed digit set.
#[derive(Clone, Debug)]
pub struct LatticeDynamics {
    pub spec: PolynomialSpec,
    pub digits: DigitSet,
    pub lattice: LatticeHNF,
    pub emb: EmbeddingData,
    pre: RatMap,
    fwd: RatMap,
    basis_residues: Vec<u64>,
    abs_a0: u64,
    basis_places: Vec<Vec<Complex64>>,
    /// `Φ_∞(d/(α−1))` per digit.
    pub completion_places: Vec<Vec<Complex64>>,
    /// `Φ_∞(d̄/(α−1))` for the mean digit `d̄` (center of the tile's bounding ball).
    pub center_places: Vec<Complex64>,
    /// Inverse roots `ρ_p⁻¹` per place.
    pub inv_roots: Vec<Complex64>,
}

impl LatticeDynamics {
    pub fn new(
        spec: &PolynomialSpec,
        digits: &DigitSet,
        lattice: &LatticeHNF,
        emb: &EmbeddingData,
    ) -> Result<Self, EngineError> {
        let coords = |x: &FieldVector| solve_rational(&lattice.basis, x).expect("nonsingular basis");
        let alpha_cols: Vec<Vec<BigRational>> = lattice.basis.iter().map(|b| coords(&b.mul_alpha(spec))).collect();
        let inv_cols: Vec<Vec<BigRational>> = lattice.basis.iter().map(|b| coords(&b.div_alpha(spec))).collect();
        let digit_coords: Vec<Vec<BigRational>> = digits.vectors.iter().map(&coords).collect();
        let digit_inv: Vec<Vec<BigRational>> = digits.vectors.iter().map(|d| coords(&d.div_alpha(spec))).collect();
        let pre = RatMap::new(&alpha_cols, &digit_coords)?;
        let fwd = RatMap::new(&inv_cols, &digit_inv)?;
        let basis_residues = lattice
            .carriers
            .iter()
            .map(|c| crate::exactnum::alpha_residue(c, spec).expect("lattice lies in ℤ[α]"))
            .collect();
        let am1 = {
            let one = FieldVector::from_int(spec.degree, 1);
            &one.mul_alpha(spec) - &one
        };
        let am1_inv = am1.inverse(spec).expect("α ≠ 1");
        let completion_places = digits.vectors.iter().map(|d| emb.place_values(&d.mul(&am1_inv, spec))).collect();
        let count = BigRational::from_integer(BigInt::from(digits.len()));
        let mean = digits
            .vectors
            .iter()
            .fold(FieldVector::zero(spec.degree), |a, d| &a + d)
            .scale(&(BigRational::one() / count));
        let center_places = emb.place_values(&mean.mul(&am1_inv, spec));
        let basis_places = lattice.basis.iter().map(|b| emb.place_values(b)).collect();
        let inv_roots = emb.places.iter().map(|p| p.root().inv()).collect();
        Ok(LatticeDynamics {
            spec: spec.clone(),
            digits: digits.clone(),
            lattice: lattice.clone(),
            emb: emb.clone(),
            pre,
            fwd,
            basis_residues,
            abs_a0: spec.abs_a0_u64(),
            basis_places,
            completion_places,
            center_places,
            inv_roots,
        })
    }

    pub fn dim(&self) -> usize {
        self.spec.degree
    }

    /// Coordinates of `x` in the lattice basis, if `x ∈ Λ_{α,m}` and they fit in `i64`.
    pub fn coords_of(&self, x: &FieldVector) -> Option<Vec<i64>> {
        lattice_membership(x, &self.lattice)?.iter().map(|c| c.to_i64()).collect()
    }

    pub fn vector_of(&self, x: &[i64]) -> FieldVector {
        let c: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.lattice.vector_of(&c)
    }

    pub fn carrier_of(&self, x: &[i64]) -> LaurentElem {
        let c: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        self.lattice.carrier_of(&c)
    }

    /// Preimages `αx + d ∈ Λ_{α,m}` in digit order, with digit indices.
    pub fn preimages(&self, x: &[i64]) -> Result<Vec<(Vec<i64>, usize)>, EngineError> {
        let mut out = Vec::new();
        for d in 0..self.digits.len() {
            if let Some(y) = self.pre.apply(x, d, 1)? {
                out.push((y, d));
            }
        }
        Ok(out)
    }

    /// Single preimage `αx + d` if it lies in `Λ_{α,m}`.
    pub fn preimage(&self, x: &[i64], d: usize) -> Result<Option<Vec<i64>>, EngineError> {
        self.pre.apply(x, d, 1)
    }

    /// Exact key of `(α−1)y + d`, scaled by a fixed denominator.
    ///
    /// Two completed points `α^{−k}(y + d/(α−1))` at the same depth coincide iff their keys do.
    pub fn completion_key(&self, y: &[i64], d: usize) -> Result<Vec<i128>, EngineError> {
        let pre = &self.pre;
        let mut out = Vec::with_capacity(y.len());
        for (i, (row, s)) in pre.num.iter().zip(&pre.shifts[d]).enumerate() {
            let mut acc: i128 = *s;
            for (a, &b) in row.iter().zip(y) {
                acc = a.checked_mul(b as i128).and_then(|p| acc.checked_add(p)).ok_or(EngineError::Overflow)?;
            }
            let own = pre.den.checked_mul(y[i] as i128).ok_or(EngineError::Overflow)?;
            out.push(acc.checked_sub(own).ok_or(EngineError::Overflow)?);
        }
        Ok(out)
    }

    /// `T_α(x)` with the digit used.
    pub fn forward(&self, x: &[i64]) -> Result<(Vec<i64>, usize), EngineError> {
        let r = x
            .iter()
            .zip(&self.basis_residues)
            .fold(0i128, |acc, (&c, &res)| (acc + c as i128 * res as i128).rem_euclid(self.abs_a0 as i128))
            as u64;
        let d = self.digits.digit_for_residue(r).map_err(|_| EngineError::DigitSelection(r))?;
        let y = self.fwd.apply(x, d, -1)?.expect("T_α maps Λ_(α,m) into itself");
        Ok((y, d))
    }

    /// Steps until `T_α^k(x) = 0`, if reached within `max` steps.
    pub fn hitting_time(&self, x: &[i64], max: usize) -> Result<Option<usize>, EngineError> {
        let mut cur = x.to_vec();
        for k in 0..=max {
            if cur.iter().all(|&c| c == 0) {
                return Ok(Some(k));
            }
            if k == max {
                break;
            }
            cur = self.forward(&cur)?.0;
        }
        Ok(None)
    }

    /// `Φ_∞(x)` per place.
    pub fn place_values(&self, x: &[i64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.emb.places.len()];
        for (&c, b) in x.iter().zip(&self.basis_places) {
            for (o, v) in out.iter_mut().zip(b) {
                *o += v * c as f64;
            }
        }
        out
    }

    /// Whether the preimage tree of `x` reaches `levels` further levels.
    pub fn has_descendants(&self, x: &[i64], levels: usize) -> Result<bool, EngineError> {
        if levels == 0 {
            return Ok(true);
        }
        for (y, _) in self.preimages(x)? {
            if self.has_descendants(&y, levels - 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{digits_from_strs, preimages_in_lambda, t_alpha};
    use crate::exactnum::{compute_embeddings, to_field_vector, validate_spec_i64, DEFAULT_TOLERANCE};
    use crate::lattice::lambda_basis;

    fn engine(coeffs: &[i64], digits: &[&str]) -> LatticeDynamics {
        let spec = validate_spec_i64(coeffs).unwrap();
        let d = digits_from_strs(&spec, digits).unwrap();
        let l = lambda_basis(&spec, d.m).unwrap();
        let e = compute_embeddings(&spec, DEFAULT_TOLERANCE).unwrap();
        LatticeDynamics::new(&spec, &d, &l, &e).unwrap()
    }

    #[test]
    fn agrees_with_exact_routines() {
        for (coeffs, digits) in [
            (&[-3i64, 2][..], &["0", "1", "2"][..]),
            (&[3, 2, 2], &["0", "1", "2"]),
            (&[-4, 3], &["0", "1", "2", "a - 1"]),
        ] {
            let eng = engine(coeffs, digits);
            let n = eng.dim();
            let range: Vec<i64> = (-4..=4).collect();
            let pts: Vec<Vec<i64>> = if n == 1 {
                range.iter().map(|&a| vec![a]).collect()
            } else {
                range.iter().flat_map(|&a| range.iter().map(move |&b| vec![a, b])).collect()
            };
            for x in pts {
                let xv = eng.vector_of(&x);
                let fast: Vec<FieldVector> = eng.preimages(&x).unwrap().iter().map(|(y, _)| eng.vector_of(y)).collect();
                let exact: Vec<FieldVector> = preimages_in_lambda(&xv, &eng.spec, &eng.digits, &eng.lattice)
                    .into_iter()
                    .map(|(y, _)| y)
                    .collect();
                assert_eq!(fast, exact);
                if eng.digits.is_standard {
                    let (tx, d) = eng.forward(&x).unwrap();
                    let (te, de) = t_alpha(&eng.carrier_of(&x), &eng.spec, &eng.digits).unwrap();
                    assert_eq!(d, de);
                    assert_eq!(eng.vector_of(&tx), to_field_vector(&te, &eng.spec));
                }
            }
        }
    }

    #[test]
    fn hitting_times() {
        let eng = engine(&[-3, 2], &["0", "1", "2"]);
        // Λ_0 = 2ℤ with basis 2: coordinates 2 ↦ 4.
        assert_eq!(eng.hitting_time(&[2], 5).unwrap(), Some(2));
        assert_eq!(eng.hitting_time(&[-1], 50).unwrap(), None);
    }
}
