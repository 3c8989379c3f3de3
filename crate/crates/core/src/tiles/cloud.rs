//! Point clouds approximating `π_∞(F)`, the slices `G(x)`, and SRS tiles.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashSet;

use super::context::{TileContext, TileError};
use crate::dynamics::{addresses, srs_preimages, surrogate, surrogate_start, Address, SrsParam};
use crate::exactnum::{to_field_vector, FieldVector, LaurentElem, PolynomialSpec};

/// Default lookahead used to drop dead branches when digits are not a residue system.
pub const DEFAULT_LOOKAHEAD: usize = 12;
/// Default cap on the number of nodes kept at one tree level.
pub const DEFAULT_NODE_LIMIT: usize = 1_000_000;
/// Extra β-adic digits beyond the cloud depth.
const SURROGATE_EXTRA: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TileKind {
    /// `π_∞(x + F)` with surrogate β-adic coordinate.
    F,
    /// The archimedean slice `G(x)`.
    G,
    /// The SRS tile in `ℝⁿ` coordinates.
    Srs,
    /// `G(x) − Φ_∞(x)`, the slice of `F` above `𝔟`-coordinate `−x`.
    Slice,
}

/// How to rebuild a point exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum PointSource {
    /// Digit word from the translate.
    Address(Address),
    /// SRS coordinates `z′` of the last tree node.
    Srs(Vec<BigInt>),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CloudPoint {
    /// Flattened archimedean coordinates (or SRS coordinates).
    pub arch: Vec<f64>,
    /// Surrogate β-adic coordinate.
    pub surrogate: f64,
    pub source: PointSource,
}

/// The translate a cloud is built from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Origin {
    Field { vector: FieldVector, carrier: LaurentElem },
    Srs { z: Vec<BigInt>, param: Vec<BigRational> },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TileCloud {
    pub kind: TileKind,
    pub origin: Origin,
    pub depth: usize,
    /// Whether depth-k nodes were completed by repeating their last digit.
    pub completed: bool,
    pub points: Vec<CloudPoint>,
    /// Euclidean radius of each depth-k cell (absent for SRS clouds).
    pub cell_radius: Option<f64>,
    /// Bound on the surrogate error of each point.
    pub surrogate_radius: f64,
}

impl TileCloud {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Printable translate.
    pub fn translate_label(&self) -> String {
        match &self.origin {
            Origin::Field { carrier, .. } => carrier.to_string(),
            Origin::Srs { z, .. } => z.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
        }
    }

    /// Exact field element behind point `i` of an F, G or slice cloud.
    pub fn exact_field_point(
        &self,
        i: usize,
        spec: &PolynomialSpec,
        digits: &crate::dynamics::DigitSet,
    ) -> Option<FieldVector> {
        let Origin::Field { vector, .. } = &self.origin else {
            return None;
        };
        let PointSource::Address(addr) = &self.points.get(i)?.source else {
            return None;
        };
        let mut p = addr.tile_point(spec, digits);
        if self.completed {
            if let Some(&last) = addr.word.last() {
                let k = addr.word.len() as i32;
                p = &p + &completion(spec, &digits.vectors[last]).mul_alpha_pow(-k, spec);
            }
        }
        Some(match self.kind {
            TileKind::Slice => p,
            _ => &p + vector,
        })
    }

    /// Exact SRS coordinates of point `i` of an SRS cloud.
    pub fn exact_srs_point(&self, i: usize) -> Option<Vec<BigRational>> {
        let Origin::Srs { param, .. } = &self.origin else {
            return None;
        };
        let PointSource::Srs(z) = &self.points.get(i)?.source else {
            return None;
        };
        let p = SrsParam::new(param.clone());
        Some(srs_completed(&p, z, self.depth, self.completed))
    }
}

/// `d/(α−1)`.
pub fn completion(spec: &PolynomialSpec, d: &FieldVector) -> FieldVector {
    let one = FieldVector::from_int(spec.degree, 1);
    let am1 = &one.mul_alpha(spec) - &one;
    d.mul(&am1.inverse(spec).expect("α ≠ 1"), spec)
}

/// Surrogate value of `x` accurate to `|a_n|^{−(depth − m + 16)}`.
pub fn surrogate_value(ctx: &TileContext, x: &LaurentElem, depth: usize) -> Result<f64, TileError> {
    if ctx.spec.is_monic() {
        return Ok(0.0);
    }
    let start = surrogate_start(x, 1 - ctx.digits.m);
    let end = depth as i64 + SURROGATE_EXTRA as i64 + 1 - ctx.digits.m as i64;
    let count = (end - start as i64).max(1) as usize;
    Ok(surrogate(x, &ctx.spec, start, count)?.value)
}

/// Depth-`k` approximation of `π_∞(t + F)` from all words in `𝒟_k`.
pub fn approximate_f(
    ctx: &TileContext,
    translate: &LaurentElem,
    k: usize,
    limit: u128,
) -> Result<TileCloud, TileError> {
    let count = (ctx.digits.len() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if count > limit {
        return Err(TileError::TooManyAddresses { depth: k, count, limit });
    }
    let spec = &ctx.spec;
    let words: Vec<Address> = addresses(&ctx.digits, k, limit)?.collect();
    let digit_places: Vec<Vec<Complex64>> = ctx.digits.vectors.iter().map(|d| ctx.emb.place_values(d)).collect();
    let inv: Vec<Complex64> = ctx.emb.places.iter().map(|p| p.root().inv()).collect();
    let vector = to_field_vector(translate, spec);
    let base = ctx.emb.place_values(&vector);
    let points = words
        .into_par_iter()
        .map(|addr| {
            let mut places = base.clone();
            let mut scale: Vec<Complex64> = inv.clone();
            let mut carrier = translate.clone();
            for (j, &d) in addr.word.iter().enumerate() {
                for ((v, s), dp) in places.iter_mut().zip(&scale).zip(&digit_places[d]) {
                    *v += dp * s;
                }
                for (s, i) in scale.iter_mut().zip(&inv) {
                    *s *= i;
                }
                carrier = &carrier + &ctx.digits.digits[d].shift(-(j as i32 + 1));
            }
            let surrogate = surrogate_value(ctx, &carrier, k)?;
            Ok(CloudPoint { arch: ctx.emb.flatten(&places), surrogate, source: PointSource::Address(addr) })
        })
        .collect::<Result<Vec<_>, TileError>>()?;
    let base_an = ctx.spec.abs_an.to_f64().unwrap_or(f64::INFINITY);
    let surrogate_radius = if ctx.spec.is_monic() { 0.0 } else { base_an.powi(-(k as i32 - ctx.digits.m)) };
    Ok(TileCloud {
        kind: TileKind::F,
        origin: Origin::Field { vector, carrier: translate.clone() },
        depth: k,
        completed: false,
        points,
        cell_radius: Some(ctx.bounds.cell_radius(k)),
        surrogate_radius,
    })
}

/// Options for growing the preimage tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeOptions {
    /// Levels a node must still be extendable by; `None` picks a default from the digit set.
    pub lookahead: Option<usize>,
    pub node_limit: usize,
}

impl Default for TreeOptions {
    fn default() -> Self {
        TreeOptions { lookahead: None, node_limit: DEFAULT_NODE_LIMIT }
    }
}

impl TreeOptions {
    pub fn lookahead_for(&self, ctx: &TileContext) -> usize {
        self.lookahead.unwrap_or(if ctx.digits.has_residue_system { 0 } else { DEFAULT_LOOKAHEAD })
    }
}

/// A preimage-tree node: lattice coordinates and the digit word leading to it.
pub type TreeNode = (Vec<i64>, Vec<usize>);

/// Depth-`k` nodes of the preimage tree of `x`, as (coordinates, digit word).
pub fn preimage_tree(ctx: &TileContext, x: &[i64], k: usize, opts: &TreeOptions) -> Result<Vec<TreeNode>, TileError> {
    let eng = &ctx.engine;
    let look = opts.lookahead_for(ctx);
    if !eng.has_descendants(x, look)? {
        return Ok(Vec::new());
    }
    let mut coords: Vec<Vec<i64>> = vec![x.to_vec()];
    // Per level: (parent index, digit).
    let mut links: Vec<Vec<(u32, u32)>> = Vec::with_capacity(k);
    for _ in 0..k {
        let children: Vec<Vec<(Vec<i64>, u32, u32)>> = coords
            .par_iter()
            .enumerate()
            .map(|(pi, node)| {
                let mut out = Vec::new();
                for (y, d) in eng.preimages(node)? {
                    if eng.has_descendants(&y, look)? {
                        out.push((y, pi as u32, d as u32));
                    }
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>, TileError>>()?;
        let total: usize = children.iter().map(Vec::len).sum();
        if total > opts.node_limit {
            return Err(TileError::TreeTooLarge { nodes: total, limit: opts.node_limit });
        }
        let mut next = Vec::with_capacity(total);
        let mut level = Vec::with_capacity(total);
        for (y, p, d) in children.into_iter().flatten() {
            next.push(y);
            level.push((p, d));
        }
        coords = next;
        links.push(level);
    }
    let out = coords
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let mut word = vec![0usize; k];
            let mut idx = i;
            for lvl in (0..k).rev() {
                let (p, d) = links[lvl][idx];
                word[lvl] = d as usize;
                idx = p as usize;
            }
            (c, word)
        })
        .collect();
    Ok(out)
}

/// Depth-`k` approximation of `G(x)` by completed preimage-tree nodes.
///
/// Node `y` at depth `k ≥ 1` reached with last digit `d` contributes `α^{−k}(y + d/(α−1))`,
/// a point of `G(x)` whenever the tree below `y` is infinite. Equal points are kept once.
pub fn approximate_g(ctx: &TileContext, x: &FieldVector, k: usize, opts: &TreeOptions) -> Result<TileCloud, TileError> {
    let eng = &ctx.engine;
    let carrier = crate::lattice::lattice_membership(x, &ctx.lambda)
        .map(|c| ctx.lambda.carrier_of(&c))
        .unwrap_or_else(LaurentElem::zero);
    let mut cloud = TileCloud {
        kind: TileKind::G,
        origin: Origin::Field { vector: x.clone(), carrier },
        depth: k,
        completed: k > 0,
        points: Vec::new(),
        cell_radius: Some(ctx.bounds.cell_radius(k)),
        surrogate_radius: 0.0,
    };
    let Some(xc) = eng.coords_of(x) else { return Ok(cloud) };
    let nodes = preimage_tree(ctx, &xc, k, opts)?;
    let scale: Vec<Complex64> = eng.inv_roots.iter().map(|r| r.powi(k as i32)).collect();
    let mut seen = HashSet::new();
    for (y, word) in nodes {
        let mut places = eng.place_values(&y);
        if let Some(&d) = word.last() {
            if !seen.insert(eng.completion_key(&y, d)?) {
                continue;
            }
            for (v, c) in places.iter_mut().zip(&eng.completion_places[d]) {
                *v += c;
            }
        }
        for (v, s) in places.iter_mut().zip(&scale) {
            *v *= s;
        }
        cloud.points.push(CloudPoint {
            arch: ctx.emb.flatten(&places),
            surrogate: 0.0,
            source: PointSource::Address(Address { word }),
        });
    }
    Ok(cloud)
}

/// Depth-`k` SRS tile point of node `z′`: `M^k(z′ − {r·z′}(I − M)⁻¹e_n)`.
pub fn srs_tile_point(p: &SrsParam, z: &[BigInt], k: usize) -> Vec<BigRational> {
    srs_completed(p, z, k, true)
}

fn srs_completed(p: &SrsParam, z: &[BigInt], k: usize, completed: bool) -> Vec<BigRational> {
    let n = p.dim();
    let mut v: Vec<BigRational> = z.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    if completed && k > 0 {
        let dot = p.dot(z);
        let frac = &dot - dot.floor();
        if !frac.is_zero() {
            let fixed = resolvent_last_column(p);
            for (vi, f) in v.iter_mut().zip(&fixed) {
                *vi -= &frac * f;
            }
        }
    }
    debug_assert_eq!(v.len(), n);
    for _ in 0..k {
        v = p.apply_companion(&v);
    }
    v
}

/// `(I − M)⁻¹ e_n` by exact elimination.
fn resolvent_last_column(p: &SrsParam) -> Vec<BigRational> {
    let n = p.dim();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[j] = BigRational::from_integer(1.into());
        let me = p.apply_companion(&e);
        cols.push(FieldVector(e.iter().zip(&me).map(|(a, b)| a - b).collect()));
    }
    let mut rhs = vec![BigRational::zero(); n];
    rhs[n - 1] = BigRational::from_integer(1.into());
    crate::exactnum::solve_rational(&cols, &FieldVector(rhs)).expect("1 is not an eigenvalue of M")
}

/// Depth-`k` approximation of the SRS tile of `z`, in SRS coordinates.
pub fn approximate_srs_tile(p: &SrsParam, z: &[BigInt], k: usize, node_limit: usize) -> Result<TileCloud, TileError> {
    let mut level: Vec<(Vec<BigInt>, Vec<usize>)> = vec![(z.to_vec(), Vec::new())];
    for _ in 0..k {
        let next: Vec<(Vec<BigInt>, Vec<usize>)> = level
            .par_iter()
            .flat_map_iter(|(node, word)| {
                srs_preimages(p, node).into_iter().enumerate().map(move |(i, y)| {
                    let mut w = word.clone();
                    w.push(i);
                    (y, w)
                })
            })
            .collect();
        if next.len() > node_limit {
            return Err(TileError::TreeTooLarge { nodes: next.len(), limit: node_limit });
        }
        level = next;
    }
    let mut seen = HashSet::new();
    let mut points = Vec::with_capacity(level.len());
    for (node, _) in level {
        let exact = srs_completed(p, &node, k, true);
        if !seen.insert(exact.clone()) {
            continue;
        }
        points.push(CloudPoint {
            arch: exact.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect(),
            surrogate: 0.0,
            source: PointSource::Srs(node),
        });
    }
    Ok(TileCloud {
        kind: TileKind::Srs,
        origin: Origin::Srs { z: z.to_vec(), param: p.r.clone() },
        depth: k,
        completed: k > 0,
        points,
        cell_radius: None,
        surrogate_radius: 0.0,
    })
}

/// Translates `Σ c_i basis_i` with `|c_i| ≤ radius` whose `𝔟`-coordinate lies in a window.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceWindow {
    pub basis: Vec<LaurentElem>,
    pub radius: i64,
    pub surrogate_lo: f64,
    pub surrogate_hi: f64,
}

/// Slices `G(x) − Φ_∞(x)` for the translates in `window`, each at surrogate height of `−x`.
pub fn slice_decomposition(
    ctx: &TileContext,
    k: usize,
    window: &SliceWindow,
    opts: &TreeOptions,
) -> Result<Vec<TileCloud>, TileError> {
    let mut out = Vec::new();
    if window.surrogate_lo > window.surrogate_hi || window.radius < 0 {
        return Ok(out);
    }
    let n = window.basis.len();
    let side = (2 * window.radius + 1) as usize;
    let total = side.checked_pow(n as u32).unwrap_or(usize::MAX);
    for idx in 0..total {
        let mut rest = idx;
        let mut x = LaurentElem::zero();
        for b in window.basis.iter().rev() {
            let c = (rest % side) as i64 - window.radius;
            rest /= side;
            x = &x + &b.scale(&BigInt::from(c));
        }
        let height = surrogate_value(ctx, &-&x, k)?;
        if height < window.surrogate_lo || height > window.surrogate_hi {
            continue;
        }
        let xv = to_field_vector(&x, &ctx.spec);
        let mut cloud = approximate_g(ctx, &xv, k, opts)?;
        if cloud.is_empty() {
            continue;
        }
        let shift = ctx.emb.flatten(&ctx.emb.place_values(&xv));
        for p in &mut cloud.points {
            for (a, s) in p.arch.iter_mut().zip(&shift) {
                *a -= s;
            }
            p.surrogate = height;
        }
        cloud.kind = TileKind::Slice;
        cloud.origin = Origin::Field { vector: xv, carrier: x };
        out.push(cloud);
    }
    Ok(out)
}
