//! Real coordinates of a lattice under `Φ_∞`, for enumerating lattice points in balls.

use num_bigint::BigInt;

use crate::exactnum::EmbeddingData;
use crate::lattice::LatticeHNF;

/// Basis columns `Φ_∞(b_i)` as real vectors together with the inverse matrix.
#[derive(Clone, Debug)]
pub struct LatticeFrame {
    /// `columns[i]` is the flattened embedding of basis vector `i`.
    pub columns: Vec<Vec<f64>>,
    /// Row-major inverse of the column matrix.
    inverse: Vec<Vec<f64>>,
}

impl LatticeFrame {
    pub fn new(lattice: &LatticeHNF, emb: &EmbeddingData) -> Self {
        let columns: Vec<Vec<f64>> = lattice.basis.iter().map(|b| emb.flatten(&emb.place_values(b))).collect();
        let inverse = invert(&columns);
        LatticeFrame { columns, inverse }
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    /// `Φ_∞` of the lattice point with integer coordinates `t`.
    pub fn point(&self, t: &[i64]) -> Vec<f64> {
        let n = self.dim();
        let mut out = vec![0.0; n];
        for (col, &c) in self.columns.iter().zip(t) {
            for (o, v) in out.iter_mut().zip(col) {
                *o += v * c as f64;
            }
        }
        out
    }

    /// Volume of a fundamental domain of the embedded lattice.
    pub fn covolume(&self) -> f64 {
        determinant(&self.columns).abs()
    }

    /// Integer coordinates of all lattice points `v` with `‖v − center‖ ≤ radius`, sorted.
    pub fn points_in_ball(&self, center: &[f64], radius: f64) -> Vec<Vec<i64>> {
        let n = self.dim();
        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        for row in &self.inverse {
            let mid: f64 = row.iter().zip(center).map(|(a, b)| a * b).sum();
            let spread = radius * row.iter().map(|a| a * a).sum::<f64>().sqrt();
            lo.push((mid - spread).floor() as i64 - 1);
            hi.push((mid + spread).ceil() as i64 + 1);
        }
        let mut out = Vec::new();
        let mut t = lo.clone();
        loop {
            let p = self.point(&t);
            let dist: f64 = p.iter().zip(center).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            if dist <= radius {
                out.push(t.clone());
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if t[i] < hi[i] {
                    t[i] += 1;
                    break;
                }
                t[i] = lo[i];
            }
        }
    }
}

pub(crate) fn to_big(t: &[i64]) -> Vec<BigInt> {
    t.iter().map(|&c| BigInt::from(c)).collect()
}

/// Inverse of the matrix whose columns are `cols`, by Gauss–Jordan with partial pivoting.
fn invert(cols: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = cols.len();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n).map(|j| cols[j][i]).collect();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).expect("nonempty");
        a.swap(c, p);
        let pivot = a[c][c];
        assert!(pivot != 0.0, "embedded lattice basis is singular");
        for v in a[c].iter_mut() {
            *v /= pivot;
        }
        let pivot_row = a[c].clone();
        for (r, row) in a.iter_mut().enumerate() {
            let f = row[c];
            if r != c && f != 0.0 {
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

fn determinant(cols: &[Vec<f64>]) -> f64 {
    let n = cols.len();
    let mut a: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&x, &y| a[x][c].abs().total_cmp(&a[y][c].abs())).expect("nonempty");
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(c, p);
            det = -det;
        }
        det *= a[c][c];
        let pivot_row = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            let f = row[c] / pivot_row[c];
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= f * p;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{compute_embeddings, validate_spec_i64, DEFAULT_TOLERANCE};
    use crate::lattice::lambda_basis;

    #[test]
    fn ball_enumeration_matches_brute_force() {
        let spec = validate_spec_i64(&[3, 2, 2]).unwrap();
        let emb = compute_embeddings(&spec, DEFAULT_TOLERANCE).unwrap();
        let frame = LatticeFrame::new(&lambda_basis(&spec, 0).unwrap(), &emb);
        let center = [0.3, -0.7];
        let got = frame.points_in_ball(&center, 5.0);
        let mut want = Vec::new();
        for a in -40..=40i64 {
            for b in -40..=40i64 {
                let p = frame.point(&[a, b]);
                if ((p[0] - center[0]).powi(2) + (p[1] - center[1]).powi(2)).sqrt() <= 5.0 {
                    want.push(vec![a, b]);
                }
            }
        }
        assert_eq!(got, want);
        // Φ(ℤ + ℤα) has covolume √5/2 and Λ_0 = 2ℤ + (2α+2)ℤ has index 4 in it.
        assert!((frame.covolume() - 2.0 * 5f64.sqrt()).abs() < 1e-9);
    }
}
