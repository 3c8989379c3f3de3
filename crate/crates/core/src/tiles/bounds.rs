//! Rigorous archimedean bounds for `π_∞(F)` via support functions of the digit series.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::dynamics::DigitSet;
use crate::exactnum::{EmbeddingData, FieldVector, PolynomialSpec};

/// Number of sampled directions for complex places.
const DIRECTIONS: usize = 1024;

/// Ball bounds for `π_∞(F)` centered at `Φ_∞(d̄/(α−1))`, `d̄` the mean digit.
///
/// All moduli are standard complex absolute values.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TileBounds {
    /// Center per place.
    #[serde(skip)]
    pub center_places: Vec<Complex64>,
    /// Center as a real vector.
    pub center: Vec<f64>,
    /// Radius of `π_p(F)` around the center at each place.
    pub place_radii: Vec<f64>,
    /// Euclidean radius `√(Σ_p R_p²)` in `ℝⁿ`.
    pub radius: f64,
    /// Diameter bound `c′ = 2·radius`.
    pub diameter: f64,
    /// Uncentered geometric bound `max_d ‖Φ_∞(d)‖ / (contraction − 1)`.
    pub geometric: f64,
    /// `|ρ_p|` per place.
    pub place_moduli: Vec<f64>,
    pub contraction: f64,
}

impl TileBounds {
    pub fn compute(spec: &PolynomialSpec, digits: &DigitSet, emb: &EmbeddingData) -> Self {
        let n = spec.degree;
        let count = BigRational::from_integer(BigInt::from(digits.len()));
        let mean = digits.vectors.iter().fold(FieldVector::zero(n), |a, d| &a + d).scale(&(BigRational::one() / count));
        let one = FieldVector::from_int(n, 1);
        let am1_inv = (&one.mul_alpha(spec) - &one).inverse(spec).expect("α ≠ 1");
        let center_places = emb.place_values(&mean.mul(&am1_inv, spec));
        let mean_places = emb.place_values(&mean);
        let digit_places: Vec<Vec<Complex64>> = digits.vectors.iter().map(|d| emb.place_values(d)).collect();
        let mut place_radii = Vec::with_capacity(emb.places.len());
        for (p, place) in emb.places.iter().enumerate() {
            let rho = place.root();
            let offsets: Vec<Complex64> = digit_places.iter().map(|d| d[p] - mean_places[p]).collect();
            place_radii.push(place_radius(rho, &offsets, place.width() == 2));
        }
        let radius = place_radii.iter().map(|r| r * r).sum::<f64>().sqrt();
        let max_digit =
            digit_places.iter().map(|d| d.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()).fold(0.0, f64::max);
        let contraction = emb.contraction;
        TileBounds {
            center: emb.flatten(&center_places),
            center_places,
            place_radii,
            radius,
            diameter: 2.0 * radius,
            geometric: max_digit / (contraction - 1.0) * (1.0 + 1e-9),
            place_moduli: emb.places.iter().map(|p| p.root().norm()).collect(),
            contraction,
        }
    }

    /// Radius of one depth-`k` cell at each place: `R_p |ρ_p|^{−k}`.
    pub fn cell_place_radii(&self, k: usize) -> Vec<f64> {
        self.place_radii.iter().zip(&self.place_moduli).map(|(r, m)| r * m.powi(-(k as i32))).collect()
    }

    /// Euclidean radius of one depth-`k` cell; at most `radius · contraction^{−k}`.
    pub fn cell_radius(&self, k: usize) -> f64 {
        self.cell_place_radii(k).iter().map(|r| r * r).sum::<f64>().sqrt()
    }
}

/// `sup_θ Σ_j max_d Re(e^{−iθ} ρ^{−j} o_d)` with a tail bound and a Lipschitz correction.
fn place_radius(rho: Complex64, offsets: &[Complex64], complex: bool) -> f64 {
    let modulus = rho.norm();
    let max_off = offsets.iter().map(|o| o.norm()).fold(0.0, f64::max);
    if max_off == 0.0 {
        return 0.0;
    }
    // Truncate once the geometric tail is below 1e-13 · max_off.
    let mut terms = 1usize;
    while max_off * modulus.powi(-(terms as i32)) / (modulus - 1.0) > 1e-13 * max_off && terms < 100_000 {
        terms += 1;
    }
    let tail = max_off * modulus.powi(-(terms as i32)) / (modulus - 1.0);
    let inv = rho.inv();
    let scaled: Vec<Vec<Complex64>> = {
        let mut pw = inv;
        (0..terms)
            .map(|_| {
                let row = offsets.iter().map(|o| o * pw).collect();
                pw *= inv;
                row
            })
            .collect()
    };
    let support = |theta: f64| -> f64 {
        let u = Complex64::from_polar(1.0, -theta);
        scaled.iter().map(|row| row.iter().map(|z| (u * z).re).fold(f64::NEG_INFINITY, f64::max)).sum()
    };
    let best = if complex {
        let coarse = max_off / (modulus - 1.0);
        let step = 2.0 * std::f64::consts::PI / DIRECTIONS as f64;
        let sampled = (0..DIRECTIONS).map(|i| support(i as f64 * step)).fold(f64::NEG_INFINITY, f64::max);
        sampled + coarse * step / 2.0
    } else {
        support(0.0).max(support(std::f64::consts::PI))
    };
    (best + tail) * (1.0 + 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::digits_from_strs;
    use crate::exactnum::{compute_embeddings, validate_spec_i64, DEFAULT_TOLERANCE};

    #[test]
    fn interval_for_three_halves() {
        let spec = validate_spec_i64(&[-3, 2]).unwrap();
        let d = digits_from_strs(&spec, &["0", "1", "2"]).unwrap();
        let e = compute_embeddings(&spec, DEFAULT_TOLERANCE).unwrap();
        let b = TileBounds::compute(&spec, &d, &e);
        // π_∞F = [0, 4], center 1/(α−1) = 2, radius 2.
        assert!((b.center[0] - 2.0).abs() < 1e-12);
        assert!((b.radius - 2.0).abs() < 1e-6 && b.radius >= 2.0);
        assert!((b.geometric - 4.0).abs() < 1e-6);
    }

    #[test]
    fn complex_place_radius_is_an_upper_bound() {
        let spec = validate_spec_i64(&[3, 2, 2]).unwrap();
        let d = digits_from_strs(&spec, &["0", "1", "2"]).unwrap();
        let e = compute_embeddings(&spec, DEFAULT_TOLERANCE).unwrap();
        let b = TileBounds::compute(&spec, &d, &e);
        assert!(b.radius > 0.0 && b.radius <= b.geometric + 2.0 * b.center[0].hypot(b.center[1]));
        assert!(b.cell_radius(3) <= b.radius * b.contraction.powi(-3) * (1.0 + 1e-12));
    }
}
