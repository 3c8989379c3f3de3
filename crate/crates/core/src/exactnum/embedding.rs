//! Archimedean embeddings: the roots of `A` and the map `Φ_∞: ℚ(α) → ℝ^r × ℂ^s`.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use super::field::FieldVector;
use super::poly::PolynomialSpec;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EmbeddingError {
    #[error("root iteration did not converge within {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
}

/// One archimedean place: a real root, or the representative with positive imaginary
/// part of a conjugate pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Place {
    Real(f64),
    Complex { re: f64, im: f64 },
}

impl Place {
    pub fn root(&self) -> Complex64 {
        match *self {
            Place::Real(x) => Complex64::new(x, 0.0),
            Place::Complex { re, im } => Complex64::new(re, im),
        }
    }

    /// Number of real coordinates this place contributes.
    pub fn width(&self) -> usize {
        match self {
            Place::Real(_) => 1,
            Place::Complex { .. } => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbeddingData {
    /// All `n` roots sorted by `(Re, Im)`.
    pub roots: Vec<Complex64>,
    /// Places in coordinate order, sorted by `(Re, Im)` of their representative root.
    pub places: Vec<Place>,
    pub r_count: usize,
    pub s_count: usize,
    /// Relative residual tolerance met by every root.
    pub precision: f64,
    /// `min |root|`; exceeds 1 for expanding polynomials.
    pub contraction: f64,
}

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn scale_at(coeffs: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let s: f64 = coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.abs());
    s.max(1.0)
}

/// All roots of `A` by Aberth–Ehrlich iteration followed by Newton polishing.
///
/// A root is accepted when `|A(z)| ≤ tolerance · max(1, Σ|a_i||z|^i)`.
pub fn compute_embeddings(spec: &PolynomialSpec, tolerance: f64) -> Result<EmbeddingData, EmbeddingError> {
    let coeffs: Vec<f64> = spec.coeffs.iter().map(|c| c.to_f64().expect("finite")).collect();
    let n = spec.degree;
    let lead = coeffs[n];
    let radius = (coeffs[0].abs() / lead.abs()).powf(1.0 / n as f64);
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4)).collect();
    const MAX_ITER: usize = 500;
    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = horner(&coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[k] -= step;
            max_step = max_step.max(step.norm() / z[k].norm().max(1.0));
        }
        if max_step < 1e-15 {
            converged = true;
            break;
        }
    }
    for root in z.iter_mut() {
        for _ in 0..4 {
            let (p, dp) = horner(&coeffs, *root);
            if dp.norm() == 0.0 || p.norm() == 0.0 {
                break;
            }
            *root -= p / dp;
        }
    }
    let mut worst: f64 = 0.0;
    for root in &z {
        let (p, _) = horner(&coeffs, *root);
        worst = worst.max(p.norm() / scale_at(&coeffs, *root));
    }
    if !worst.is_finite() || worst > tolerance || (!converged && worst > tolerance) {
        return Err(EmbeddingError::NoConvergence { iterations: MAX_ITER, residual: worst });
    }
    // Snap real roots, then pair the rest by conjugation.
    let snap = |c: Complex64| -> Complex64 {
        if c.im.abs() <= 1e3 * tolerance * (1.0 + c.norm()) {
            Complex64::new(c.re, 0.0)
        } else {
            c
        }
    };
    let mut roots: Vec<Complex64> = z.into_iter().map(snap).collect();
    let mut places = Vec::new();
    let mut upper: Vec<Complex64> = Vec::new();
    let mut lower: Vec<Complex64> = Vec::new();
    for r in &roots {
        if r.im == 0.0 {
            places.push(Place::Real(r.re));
        } else if r.im > 0.0 {
            upper.push(*r);
        } else {
            lower.push(*r);
        }
    }
    if upper.len() != lower.len() {
        return Err(EmbeddingError::NoConvergence { iterations: MAX_ITER, residual: worst });
    }
    // Replace each pair by an exactly conjugate pair (averaging the two approximations).
    let mut paired = Vec::new();
    for u in upper {
        let (idx, _) = lower
            .iter()
            .enumerate()
            .map(|(i, l)| (i, (l.conj() - u).norm()))
            .fold((usize::MAX, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
        let l = lower.swap_remove(idx);
        let avg = (u + l.conj()) * 0.5;
        paired.push(avg);
        places.push(Place::Complex { re: avg.re, im: avg.im });
    }
    let r_count = places.iter().filter(|p| matches!(p, Place::Real(_))).count();
    let s_count = paired.len();
    roots = places
        .iter()
        .flat_map(|p| match *p {
            Place::Real(x) => vec![Complex64::new(x, 0.0)],
            Place::Complex { re, im } => vec![Complex64::new(re, im), Complex64::new(re, -im)],
        })
        .collect();
    let key = |c: &Complex64| (c.re, c.im);
    roots.sort_by(|a, b| key(a).partial_cmp(&key(b)).expect("finite roots"));
    places.sort_by(|a, b| key(&a.root()).partial_cmp(&key(&b.root())).expect("finite roots"));
    let contraction = roots.iter().map(|r| r.norm()).fold(f64::INFINITY, f64::min);
    Ok(EmbeddingData { roots, places, r_count, s_count, precision: tolerance, contraction })
}

impl EmbeddingData {
    /// Dimension `n = r + 2s` of `𝕂_∞`.
    pub fn dim(&self) -> usize {
        self.r_count + 2 * self.s_count
    }

    /// Values of the element at each place (complex numbers; real places have zero imaginary part).
    pub fn place_values(&self, x: &FieldVector) -> Vec<Complex64> {
        let coords: Vec<f64> = x.0.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        self.places.iter().map(|p| horner(&coords, p.root()).0).collect()
    }

    /// Flattens per-place complex values to real coordinates.
    pub fn flatten(&self, values: &[Complex64]) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.dim());
        for (p, v) in self.places.iter().zip(values) {
            match p {
                Place::Real(_) => out.push(v.re),
                Place::Complex { .. } => {
                    out.push(v.re);
                    out.push(v.im);
                }
            }
        }
        out
    }

    /// Inverse of [`Self::flatten`].
    pub fn unflatten(&self, coords: &[f64]) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.places.len());
        let mut i = 0;
        for p in &self.places {
            match p {
                Place::Real(_) => {
                    out.push(Complex64::new(coords[i], 0.0));
                    i += 1;
                }
                Place::Complex { .. } => {
                    out.push(Complex64::new(coords[i], coords[i + 1]));
                    i += 2;
                }
            }
        }
        out
    }

    /// `Φ_∞(α^k)` per place.
    pub fn alpha_pow(&self, k: i32) -> Vec<Complex64> {
        self.places.iter().map(|p| p.root().powi(k)).collect()
    }
}

/// `Φ_∞(x)` as a real vector of length `n`; complex places flattened to `(Re, Im)`.
pub fn embed_arch(x: &FieldVector, emb: &EmbeddingData) -> Vec<f64> {
    emb.flatten(&emb.place_values(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{to_field_vector, validate_spec_i64};

    #[test]
    fn linear_roots() {
        let ex1 = validate_spec_i64(&[-3, 2]).unwrap();
        let e = compute_embeddings(&ex1, DEFAULT_TOLERANCE).unwrap();
        assert_eq!((e.r_count, e.s_count), (1, 0));
        assert!((e.roots[0].re - 1.5).abs() < 1e-14);
        let two = validate_spec_i64(&[-2, 1]).unwrap();
        let e = compute_embeddings(&two, DEFAULT_TOLERANCE).unwrap();
        assert!((e.roots[0].re - 2.0).abs() < 1e-14);
        assert_eq!(embed_arch(&FieldVector::from_int(1, 2), &e), vec![2.0]);
    }

    #[test]
    fn ex2_pair() {
        let ex2 = validate_spec_i64(&[3, 2, 2]).unwrap();
        let e = compute_embeddings(&ex2, DEFAULT_TOLERANCE).unwrap();
        assert_eq!((e.r_count, e.s_count), (0, 1));
        let root = e.places[0].root();
        assert!((root.norm_sqr() - 1.5).abs() < 1e-12);
        assert!((root.re + 0.5).abs() < 1e-12 && (root.im - 5f64.sqrt() / 2.0).abs() < 1e-12);
        let x = to_field_vector(&"2*a + 2".parse().unwrap(), &ex2);
        let v = embed_arch(&x, &e);
        assert!((v[0] - 1.0).abs() < 1e-12 && (v[1] - 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(embed_arch(&FieldVector::from_int(2, 1), &e), vec![1.0, 0.0]);
    }
}
