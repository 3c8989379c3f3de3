//! Exclusive-point certificates: `z` and `k` with `T_α^k(z + y) = 0 = T_α^k(z)` for all `y ∈ Y`.

use serde::Serialize;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};
use thiserror::Error;

use super::frame::{to_big, LatticeFrame};
use crate::dynamics::{t_alpha, t_alpha_orbit, DynamicsError};
use crate::exactnum::{to_field_vector, FieldVector, LaurentElem};
use crate::lattice::lattice_membership;
use crate::tiles::{TileContext, TileError};

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("digit set is not standard")]
    NotStandard,
    #[error(
        "no certificate within budget ({candidates} candidates, box radius {radius}, {steps} steps); inconclusive"
    )]
    BudgetExceeded { candidates: usize, radius: i64, steps: usize },
    #[error(transparent)]
    Tile(#[from] TileError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

/// Limits for the certificate search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchBudget {
    /// Largest coordinate radius of the box of candidates `z`.
    pub max_radius: i64,
    /// Largest `k` tried.
    pub max_steps: usize,
    pub time_limit: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_radius: 16, max_steps: 256, time_limit: Duration::from_secs(60) }
    }
}

/// `z`, `k`, the neighbor set `Y`, and the orbits of `z` and of every `z + y`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TilingCertificate {
    pub z: LaurentElem,
    pub k: usize,
    #[serde(rename = "Y")]
    pub y: Vec<LaurentElem>,
    /// `orbits[0]` is the orbit of `z`; `orbits[i + 1]` the orbit of `z + y[i]`.
    pub orbits: Vec<Vec<LaurentElem>>,
}

/// All `y ∈ 𝔷 ∩ Λ_{α,m}` with `Φ_∞(y)` in the bounding ball of `π_∞(F)`, as ℤ[α] carriers.
pub fn neighbor_set(ctx: &TileContext) -> Vec<LaurentElem> {
    let frame = LatticeFrame::new(&ctx.zcap, &ctx.emb);
    let radius = ctx.bounds.radius * (1.0 + 1e-9) + 1e-12;
    frame.points_in_ball(&ctx.bounds.center, radius).iter().map(|t| ctx.zcap.carrier_of(&to_big(t))).collect()
}

/// Searches `z` over growing coordinate boxes of `𝔷 ∩ Λ_{α,m}` for a tiling certificate.
pub fn find_exclusive_point(ctx: &TileContext, budget: &SearchBudget) -> Result<TilingCertificate, CertificateError> {
    if !ctx.digits.is_standard {
        return Err(CertificateError::NotStandard);
    }
    let start = Instant::now();
    let eng = &ctx.engine;
    let ys = neighbor_set(ctx);
    let to_engine = |x: &LaurentElem| -> Vec<i64> {
        eng.coords_of(&to_field_vector(x, &ctx.spec)).expect("𝔷 ∩ Λ_(α,m) lies in Λ_(α,m)")
    };
    let y_coords: Vec<Vec<i64>> = ys.iter().map(to_engine).collect();
    let n = ctx.spec.degree;
    let mut candidates = 0usize;
    for radius in 0..=budget.max_radius {
        for t in shell(n, radius) {
            if start.elapsed() > budget.time_limit {
                return Err(CertificateError::BudgetExceeded { candidates, radius, steps: budget.max_steps });
            }
            candidates += 1;
            let z = ctx.zcap.carrier_of(&to_big(&t));
            let zc = to_engine(&z);
            let Some(mut k) = eng.hitting_time(&zc, budget.max_steps).map_err(TileError::from)? else {
                continue;
            };
            let mut ok = true;
            for yc in &y_coords {
                let sum: Vec<i64> = zc.iter().zip(yc).map(|(a, b)| a + b).collect();
                match eng.hitting_time(&sum, budget.max_steps).map_err(TileError::from)? {
                    Some(h) => k = k.max(h),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            let mut orbits = vec![t_alpha_orbit(&z, k, &ctx.spec, &ctx.digits)?];
            for y in &ys {
                orbits.push(t_alpha_orbit(&(&z + y), k, &ctx.spec, &ctx.digits)?);
            }
            return Ok(TilingCertificate { z, k, y: ys, orbits });
        }
    }
    Err(CertificateError::BudgetExceeded { candidates, radius: budget.max_radius, steps: budget.max_steps })
}

/// Integer points with max-norm exactly `r`, in lexicographic order.
fn shell(n: usize, r: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * r + 1) as usize;
    (0..side.pow(n as u32)).filter_map(move |idx| {
        let mut rest = idx;
        let mut t = vec![0i64; n];
        for c in t.iter_mut().rev() {
            *c = (rest % side) as i64 - r;
            rest /= side;
        }
        (t.iter().map(|c| c.abs()).max().unwrap_or(0) == r).then_some(t)
    })
}

/// Outcome of re-checking a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateCheck {
    pub accepted: bool,
    pub failures: Vec<String>,
}

/// Re-verifies every orbit by direct `T_α` iteration and re-enumerates the neighbor set.
///
/// Shares no code with the search beyond `T_α` itself: orbits are recomputed step by step in
/// exact arithmetic, and `Y` coverage is checked against a fresh enumeration over a box that
/// is one unit wider than needed.
pub fn check_certificate(ctx: &TileContext, cert: &TilingCertificate) -> CertificateCheck {
    let spec = &ctx.spec;
    let mut failures = Vec::new();
    let zero = FieldVector::zero(spec.degree);
    let zv = to_field_vector(&cert.z, spec);
    if lattice_membership(&zv, &ctx.zcap).is_none() {
        failures.push(format!("z = {} is not in 𝔷 ∩ Λ", cert.z));
    }
    if cert.orbits.len() != cert.y.len() + 1 {
        failures.push("orbit count does not match Y".to_string());
    }
    let starts = std::iter::once(zv.clone()).chain(cert.y.iter().map(|y| &zv + &to_field_vector(y, spec)));
    for (i, (start, orbit)) in starts.zip(&cert.orbits).enumerate() {
        if orbit.len() != cert.k + 1 {
            failures.push(format!("orbit {i} has length {}, expected {}", orbit.len(), cert.k + 1));
            continue;
        }
        if to_field_vector(&orbit[0], spec) != start {
            failures.push(format!("orbit {i} does not start at its point"));
        }
        for j in 0..cert.k {
            match t_alpha(&orbit[j], spec, &ctx.digits) {
                Ok((next, _)) if to_field_vector(&next, spec) == to_field_vector(&orbit[j + 1], spec) => {}
                _ => failures.push(format!("orbit {i} step {j} is not T_α")),
            }
        }
        if to_field_vector(&orbit[cert.k], spec) != zero {
            failures.push(format!("orbit {i} does not reach 0 at step {}", cert.k));
        }
    }
    let listed: BTreeSet<FieldVector> = cert.y.iter().map(|y| to_field_vector(y, spec)).collect();
    for y in &listed {
        if lattice_membership(y, &ctx.zcap).is_none() {
            failures.push("Y contains a point outside 𝔷 ∩ Λ".to_string());
        }
    }
    let frame = LatticeFrame::new(&ctx.zcap, &ctx.emb);
    let radius = ctx.bounds.radius;
    for t in frame.points_in_ball(&ctx.bounds.center, radius + 1.0) {
        let p = frame.point(&t);
        let d: f64 = p.iter().zip(&ctx.bounds.center).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        if d <= radius && !listed.contains(&ctx.zcap.vector_of(&to_big(&t))) {
            failures.push(format!("Y misses the lattice point {:?}", t));
        }
    }
    CertificateCheck { accepted: failures.is_empty(), failures }
}
