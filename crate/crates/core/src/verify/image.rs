//! Which lattice points have a preimage tree of depth `k`, i.e. the image `T_α^k(Λ_{α,m})`.

use serde::Serialize;

use crate::exactnum::LaurentElem;
use crate::tiles::{TileContext, TileError};

/// Largest modulus enumerated exhaustively in degree one.
const MAX_MODULUS: u64 = 10_000_000;
/// Coordinate radius of the window used in higher degree.
pub const DEFAULT_IMAGE_WINDOW: i64 = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum ImageCharacterization {
    /// Degree one: `Λ_{α,m} = gℤ`, and `g·t` is in the image iff `t mod modulus` is listed.
    Residues { depth: usize, generator: LaurentElem, modulus: u64, residues: Vec<u64> },
    /// Higher degree: lattice coordinates in `[−radius, radius]ⁿ` that lie in the image.
    Window { depth: usize, radius: i64, points: Vec<Vec<i64>> },
}

impl ImageCharacterization {
    /// Residues reduced modulo a divisor `q` of the period, sorted and without repeats.
    pub fn residues_mod(&self, q: u64) -> Option<Vec<u64>> {
        match self {
            ImageCharacterization::Residues { modulus, residues, .. } if q > 0 && modulus % q == 0 => {
                let mut out: Vec<u64> = residues.iter().map(|r| r % q).collect();
                out.sort_unstable();
                out.dedup();
                Some(out)
            }
            _ => None,
        }
    }

    /// Whether every point at this level also lies in the image at level `coarser`.
    pub fn refines(&self, coarser: &ImageCharacterization) -> bool {
        match (self, coarser) {
            (
                ImageCharacterization::Residues { residues, .. },
                ImageCharacterization::Residues { modulus: q, residues: coarse, .. },
            ) => residues.iter().all(|r| coarse.binary_search(&(r % q)).is_ok()),
            (ImageCharacterization::Window { points, .. }, ImageCharacterization::Window { points: coarse, .. }) => {
                points.iter().all(|p| coarse.binary_search(p).is_ok())
            }
            _ => false,
        }
    }
}

/// The set `T_α^k(Λ_{α,m})`: residues in degree one, a coordinate window otherwise.
pub fn image_characterization(ctx: &TileContext, k: usize) -> Result<ImageCharacterization, TileError> {
    image_characterization_window(ctx, k, DEFAULT_IMAGE_WINDOW)
}

pub fn image_characterization_window(
    ctx: &TileContext,
    k: usize,
    radius: i64,
) -> Result<ImageCharacterization, TileError> {
    let eng = &ctx.engine;
    let an = ctx.spec.abs_an_u64();
    let modulus = an.checked_pow(k as u32).filter(|&q| q <= MAX_MODULUS);
    if let (1, Some(modulus)) = (ctx.spec.degree, modulus) {
        let mut residues = Vec::new();
        for t in 0..modulus {
            if eng.has_descendants(&[t as i64], k)? {
                residues.push(t);
            }
        }
        return Ok(ImageCharacterization::Residues {
            depth: k,
            generator: ctx.lambda.carriers[0].clone(),
            modulus,
            residues,
        });
    }
    let n = ctx.spec.degree;
    let side = (2 * radius + 1) as usize;
    let mut points = Vec::new();
    for idx in 0..side.pow(n as u32) {
        let mut rest = idx;
        let mut t = vec![0i64; n];
        for c in t.iter_mut().rev() {
            *c = (rest % side) as i64 - radius;
            rest /= side;
        }
        if eng.has_descendants(&t, k)? {
            points.push(t);
        }
    }
    Ok(ImageCharacterization::Window { depth: k, radius, points })
}
