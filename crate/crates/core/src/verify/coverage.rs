//! Monte Carlo covering multiplicity and volume balance of the collection `{𝒢(x)}`.
//!
//! A sample `w` is covered by `𝒢(x)` at depth `k` if some depth-`k` node `y` of the preimage
//! tree of `x` has `α^k w − Φ_∞(y)` inside the product of discs bounding `π_∞(F)`. Nodes are
//! only followed while their cell contains `w`, so each test costs `O(k)` small steps; the
//! resulting set lies between `𝒢(x)` and the union of its depth-`k` cell balls.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;

use super::frame::LatticeFrame;
use crate::lattice::LatticeHNF;
use crate::tiles::{TileContext, TileError};

/// Active nodes per level above which a coverage test is abandoned as an internal error.
const ACTIVE_LIMIT: usize = 100_000;

/// An axis-parallel sampling box in flattened archimedean coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Window {
    pub center: Vec<f64>,
    pub half_width: f64,
}

impl Window {
    /// Box around the center of `π_∞(F)` with half-width equal to its bounding radius.
    pub fn around_tile(ctx: &TileContext) -> Self {
        Window { center: ctx.bounds.center.clone(), half_width: ctx.bounds.radius }
    }

    pub fn volume(&self) -> f64 {
        (2.0 * self.half_width).powi(self.center.len() as i32)
    }
}

/// Which translates `x` the collection ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TranslateSet {
    /// `𝔷 ∩ Λ_{α,m}`.
    Zcap,
    /// All of `Λ_{α,m}`.
    Lambda,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiplicityReport {
    pub samples: usize,
    /// Multiplicity ↦ number of samples.
    pub histogram: BTreeMap<usize, usize>,
    pub depth: usize,
    pub seed: u64,
    /// Most frequent multiplicity (smallest on ties).
    pub mode: usize,
    /// Fraction of samples with multiplicity equal to the mode.
    pub mode_fraction: f64,
    pub mean: f64,
    /// Counts come from outer approximations.
    pub outer: bool,
    /// No inner approximation was used.
    pub inner: bool,
    pub window: Window,
    pub translates: usize,
}

/// Coverage tester for a fixed depth and translate set.
pub struct Coverage<'a> {
    ctx: &'a TileContext,
    depth: usize,
    radii: Vec<f64>,
    center: Vec<Complex64>,
    roots: Vec<Complex64>,
    digit_places: Vec<Vec<Complex64>>,
    /// (engine coordinates, `Φ_∞(x)`) per translate.
    translates: Vec<(Vec<i64>, Vec<Complex64>)>,
}

impl<'a> Coverage<'a> {
    /// Prepares all translates whose tile can meet `window`.
    pub fn new(ctx: &'a TileContext, depth: usize, window: &Window, set: TranslateSet) -> Result<Self, TileError> {
        let lattice: &LatticeHNF = match set {
            TranslateSet::Zcap => &ctx.zcap,
            TranslateSet::Lambda => &ctx.lambda,
        };
        let frame = LatticeFrame::new(lattice, &ctx.emb);
        let n = window.center.len();
        let reach = ctx.bounds.radius + window.half_width * (n as f64).sqrt();
        let shifted: Vec<f64> = window.center.iter().zip(&ctx.bounds.center).map(|(w, c)| w - c).collect();
        let mut translates = Vec::new();
        for t in frame.points_in_ball(&shifted, reach * (1.0 + 1e-9)) {
            let v = lattice.vector_of(&super::frame::to_big(&t));
            let coords = ctx.engine.coords_of(&v).expect("translate lattice lies in Λ_(α,m)");
            translates.push((coords, ctx.emb.place_values(&v)));
        }
        Ok(Coverage {
            ctx,
            depth,
            radii: ctx.bounds.place_radii.iter().map(|r| r * (1.0 + 1e-9) + 1e-12).collect(),
            center: ctx.bounds.center_places.clone(),
            roots: ctx.emb.places.iter().map(|p| p.root()).collect(),
            digit_places: ctx.digits.vectors.iter().map(|d| ctx.emb.place_values(d)).collect(),
            translates,
        })
    }

    pub fn translate_count(&self) -> usize {
        self.translates.len()
    }

    fn inside(&self, u: &[Complex64]) -> bool {
        u.iter().zip(&self.center).zip(&self.radii).all(|((u, c), r)| (u - c).norm() <= *r)
    }

    /// Whether the depth-`k` outer approximation of `𝒢(x)` contains `w` (given per place).
    fn covers(&self, x: &[i64], x_places: &[Complex64], w: &[Complex64]) -> Result<bool, TileError> {
        let u: Vec<Complex64> = w.iter().zip(x_places).map(|(a, b)| a - b).collect();
        if !self.inside(&u) {
            return Ok(false);
        }
        let eng = &self.ctx.engine;
        let mut active = vec![(x.to_vec(), u)];
        for _ in 0..self.depth {
            let mut next: Vec<(Vec<i64>, Vec<Complex64>)> = Vec::new();
            for (y, u) in &active {
                for (d, dp) in self.digit_places.iter().enumerate() {
                    let Some(child) = eng.preimage(y, d)? else { continue };
                    let v: Vec<Complex64> = u.iter().zip(&self.roots).zip(dp).map(|((u, r), d)| u * r - d).collect();
                    if self.inside(&v) && !next.iter().any(|(c, _)| *c == child) {
                        next.push((child, v));
                    }
                }
            }
            if next.is_empty() {
                return Ok(false);
            }
            if next.len() > ACTIVE_LIMIT {
                return Err(TileError::TreeTooLarge { nodes: next.len(), limit: ACTIVE_LIMIT });
            }
            active = next;
        }
        Ok(true)
    }

    /// Number of translates whose tile covers the flattened point `w`.
    pub fn multiplicity(&self, w: &[f64]) -> Result<usize, TileError> {
        let wp = self.ctx.emb.unflatten(w);
        let mut count = 0;
        for (x, xp) in &self.translates {
            if self.covers(x, xp, &wp)? {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// Seeded uniform samples in `window` (ChaCha8, `seed_from_u64`).
pub fn sample_points(window: &Window, samples: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| window.center.iter().map(|c| c + rng.gen_range(-window.half_width..window.half_width)).collect())
        .collect()
}

/// Histogram of covering multiplicities at `samples` seeded points of `window`.
pub fn estimate_multiplicity_in(
    ctx: &TileContext,
    samples: usize,
    depth: usize,
    seed: u64,
    window: &Window,
    set: TranslateSet,
) -> Result<MultiplicityReport, TileError> {
    let cov = Coverage::new(ctx, depth, window, set)?;
    let points = sample_points(window, samples, seed);
    let counts = points.par_iter().map(|w| cov.multiplicity(w)).collect::<Result<Vec<usize>, TileError>>()?;
    let mut histogram = BTreeMap::new();
    for c in &counts {
        *histogram.entry(*c).or_insert(0) += 1;
    }
    let (mode, top) = histogram.iter().fold((0, 0), |(m, f), (&k, &v)| if v > f { (k, v) } else { (m, f) });
    let mean = if samples == 0 { 0.0 } else { counts.iter().sum::<usize>() as f64 / samples as f64 };
    Ok(MultiplicityReport {
        samples,
        histogram,
        depth,
        seed,
        mode,
        mode_fraction: if samples == 0 { 0.0 } else { top as f64 / samples as f64 },
        mean,
        outer: true,
        inner: false,
        window: window.clone(),
        translates: cov.translate_count(),
    })
}

/// Multiplicity over translates in `𝔷 ∩ Λ_{α,m}`, sampling a box around the tile.
pub fn estimate_multiplicity(
    ctx: &TileContext,
    samples: usize,
    depth: usize,
    seed: u64,
) -> Result<MultiplicityReport, TileError> {
    estimate_multiplicity_in(ctx, samples, depth, seed, &Window::around_tile(ctx), TranslateSet::Zcap)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeBalance {
    /// Mean tile volume times translate density; 1 for a tiling.
    pub ratio: f64,
    /// Estimated mean volume of one tile.
    pub mean_tile_volume: f64,
    /// Translates per unit volume, `1 / covol Φ_∞(𝔷 ∩ Λ_{α,m})`.
    pub density: f64,
    pub samples: usize,
    pub depth: usize,
    pub seed: u64,
    pub window: Window,
}

/// Monte Carlo volume balance.
///
/// `Σ_x vol(𝒢(x) ∩ W) / vol(W)` is estimated by the mean covering multiplicity of uniform
/// samples in `W`; it equals the mean tile volume times the translate density up to window
/// boundary effects, and both factors are reported.
pub fn volume_balance(
    ctx: &TileContext,
    depth: usize,
    window: &Window,
    samples: usize,
    seed: u64,
) -> Result<VolumeBalance, TileError> {
    let report = estimate_multiplicity_in(ctx, samples, depth, seed, window, TranslateSet::Zcap)?;
    let density = 1.0 / LatticeFrame::new(&ctx.zcap, &ctx.emb).covolume();
    Ok(VolumeBalance {
        ratio: report.mean,
        mean_tile_volume: report.mean / density,
        density,
        samples,
        depth,
        seed,
        window: window.clone(),
    })
}
