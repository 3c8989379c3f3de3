//! Hausdorff distances between tile clouds and the almost-periodicity report.

use serde::Serialize;
use std::collections::HashMap;

use crate::exactnum::{reduce_top_shifted, FieldVector, LaurentElem};
use crate::lattice::lattice_membership;
use crate::tiles::{approximate_g, TileContext, TileError, TreeOptions};

/// Largest `k′` tried when locating `x − y` in the chain `Λ_{α,m−k′}`.
pub const DEFAULT_LEVEL_CAP: usize = 64;

/// Nearest-neighbor index on a uniform grid.
struct Grid<'a> {
    points: &'a [Vec<f64>],
    cell: f64,
    buckets: HashMap<Vec<i64>, Vec<usize>>,
}

impl<'a> Grid<'a> {
    fn new(points: &'a [Vec<f64>]) -> Self {
        let n = points[0].len();
        let mut lo = vec![f64::INFINITY; n];
        let mut hi = vec![f64::NEG_INFINITY; n];
        for p in points {
            for i in 0..n {
                lo[i] = lo[i].min(p[i]);
                hi[i] = hi[i].max(p[i]);
            }
        }
        let extent = lo.iter().zip(&hi).map(|(a, b)| b - a).fold(0.0, f64::max);
        let per_axis = (points.len() as f64).powf(1.0 / n as f64).max(1.0);
        let cell = if extent > 0.0 { extent / per_axis } else { 1.0 };
        let mut buckets: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            buckets.entry(key(p, cell)).or_default().push(i);
        }
        Grid { points, cell, buckets }
    }

    fn nearest(&self, q: &[f64]) -> f64 {
        let n = q.len();
        let base = key(q, self.cell);
        let mut best = f64::INFINITY;
        for r in 0i64.. {
            // Points in ring r are at least (r − 1)·cell away.
            if best.is_finite() && (r - 1) as f64 * self.cell > best {
                break;
            }
            if r > 0 && self.buckets.len() < ring_size(n, r) && best.is_finite() {
                // Sparse grid: fall back to a scan of the remaining buckets.
                for (k, idx) in &self.buckets {
                    if k.iter().zip(&base).map(|(a, b)| (a - b).abs()).max().unwrap_or(0) >= r {
                        for &i in idx {
                            best = best.min(dist(&self.points[i], q));
                        }
                    }
                }
                break;
            }
            let side = 2 * r + 1;
            let mut off = vec![-r; n];
            loop {
                if off.iter().any(|o| o.abs() == r) {
                    let k: Vec<i64> = base.iter().zip(&off).map(|(a, b)| a + b).collect();
                    if let Some(idx) = self.buckets.get(&k) {
                        for &i in idx {
                            best = best.min(dist(&self.points[i], q));
                        }
                    }
                }
                let mut i = n;
                let mut done = true;
                while i > 0 {
                    i -= 1;
                    if off[i] < r {
                        off[i] += 1;
                        done = false;
                        break;
                    }
                    off[i] = -r;
                }
                if done {
                    break;
                }
            }
            let _ = side;
        }
        best
    }
}

fn ring_size(n: usize, r: i64) -> usize {
    let outer = (2 * r + 1) as usize;
    let inner = (2 * r - 1).max(0) as usize;
    outer.pow(n as u32) - inner.pow(n as u32)
}

fn key(p: &[f64], cell: f64) -> Vec<i64> {
    p.iter().map(|c| (c / cell).floor() as i64).collect()
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// `max_{a∈A} min_{b∈B} ‖a − b‖`.
pub fn directed_hausdorff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    if b.is_empty() {
        return f64::INFINITY;
    }
    let grid = Grid::new(b);
    a.iter().map(|p| grid.nearest(p)).fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance of two finite point sets.
pub fn hausdorff_distance(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    directed_hausdorff(a, b).max(directed_hausdorff(b, a))
}

/// Largest `k′ ≤ cap` with `x ∈ Λ_{α,m−k′}`, or `None` if `x = 0` (every level).
///
/// Uses `Λ_{α,j} = ℤ[α] ∩ α^{j−1}ℤ[α⁻¹]` and the exact membership tests.
pub fn lattice_level(ctx: &TileContext, x: &LaurentElem, cap: usize) -> Option<usize> {
    if crate::exactnum::to_field_vector(x, &ctx.spec).is_zero() {
        return None;
    }
    let m = ctx.digits.m;
    let mut level = 0;
    while level < cap && reduce_top_shifted(x, m - level as i32 - 2, &ctx.spec).is_member() {
        level += 1;
    }
    Some(level)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HausdorffReport {
    /// `δ_H(𝒢(x) − Φ_∞(x), 𝒢(y) − Φ_∞(y))` between depth-`k` clouds.
    pub distance: f64,
    pub depth: usize,
    /// Largest `k′` with `x − y ∈ Λ_{α,m−k′}` (`None` when `x = y`).
    pub level: Option<usize>,
    /// `distance · contraction^{k′}`.
    pub empirical_constant: Option<f64>,
    /// Computed diameter bound `c′` of `π_∞(F)`.
    pub diameter_bound: f64,
    /// Whether `distance ≤ c′·contraction^{−k′} + 2·cell_radius(k)`.
    pub within_bound: bool,
    pub points_x: usize,
    pub points_y: usize,
}

/// Compares the shapes of `𝒢(x)` and `𝒢(y)` at depth `k`.
pub fn hausdorff_report(
    ctx: &TileContext,
    x: &FieldVector,
    y: &FieldVector,
    k: usize,
    opts: &TreeOptions,
) -> Result<HausdorffReport, TileError> {
    let shifted = |v: &FieldVector| -> Result<Vec<Vec<f64>>, TileError> {
        let cloud = approximate_g(ctx, v, k, opts)?;
        let base = ctx.emb.flatten(&ctx.emb.place_values(v));
        Ok(cloud.points.into_iter().map(|p| p.arch.iter().zip(&base).map(|(a, b)| a - b).collect()).collect())
    };
    let a = shifted(x)?;
    let b = if x == y { a.clone() } else { shifted(y)? };
    let distance = if x == y { 0.0 } else { hausdorff_distance(&a, &b) };
    let diff = &(x - y);
    let level = lattice_membership(diff, &ctx.lambda)
        .and_then(|c| lattice_level(ctx, &ctx.lambda.carrier_of(&c), DEFAULT_LEVEL_CAP));
    let contraction = ctx.bounds.contraction;
    let empirical_constant = level.map(|l| distance * contraction.powi(l as i32));
    let slack = 2.0 * ctx.bounds.cell_radius(k);
    let within_bound = match level {
        Some(l) => distance <= ctx.bounds.diameter * contraction.powi(-(l as i32)) + slack,
        None => distance == 0.0,
    };
    Ok(HausdorffReport {
        distance,
        depth: k,
        level,
        empirical_constant,
        diameter_bound: ctx.bounds.diameter,
        within_bound,
        points_x: a.len(),
        points_y: b.len(),
    })
}
