//! Standardness of a digit set and greedy witnesses for nonempty `𝒢(x)`.

use crate::dynamics::{validate_digits, Address};
use crate::exactnum::{FieldVector, LaurentElem, PolynomialSpec};
use crate::tiles::{TileContext, TileError};

/// Whether `raw` is a complete residue system of `ℤ[α]/αℤ[α]`.
///
/// Invalid inputs (repeated digits, elements outside `ℤ[α]`) are not standard.
pub fn check_standard(spec: &PolynomialSpec, raw: &[LaurentElem]) -> bool {
    validate_digits(spec, raw).is_ok_and(|d| d.is_standard)
}

/// A digit word of length `len` along which the preimage tree of `x` continues.
///
/// Digits are chosen greedily in digit order; a choice whose subtree dies is undone. Returns
/// `None` if `x ∉ Λ_{α,m}` or no word of that length exists.
pub fn greedy_point(ctx: &TileContext, x: &FieldVector, len: usize) -> Result<Option<Address>, TileError> {
    let Some(root) = ctx.engine.coords_of(x) else {
        return Ok(None);
    };
    let mut word = Vec::with_capacity(len);
    if extend(ctx, &root, len, &mut word)? {
        Ok(Some(Address { word }))
    } else {
        Ok(None)
    }
}

fn extend(ctx: &TileContext, y: &[i64], left: usize, word: &mut Vec<usize>) -> Result<bool, TileError> {
    if left == 0 {
        return Ok(true);
    }
    for (child, d) in ctx.engine.preimages(y)? {
        word.push(d);
        if extend(ctx, &child, left - 1, word)? {
            return Ok(true);
        }
        word.pop();
    }
    Ok(false)
}

/// The completed point `α^{−k}(y_k + d_k/(α−1))` reached from `x` along `word`, flattened.
pub fn witness_point(ctx: &TileContext, x: &FieldVector, word: &Address) -> Option<Vec<f64>> {
    let eng = &ctx.engine;
    let mut y = eng.coords_of(x)?;
    for &d in &word.word {
        y = eng.preimage(&y, d).ok()??;
    }
    let mut places = eng.place_values(&y);
    if let Some(&d) = word.word.last() {
        for (v, c) in places.iter_mut().zip(&eng.completion_places[d]) {
            *v += c;
        }
    }
    let k = word.word.len() as i32;
    for (v, r) in places.iter_mut().zip(&eng.inv_roots) {
        *v *= r.powi(k);
    }
    Some(ctx.emb.flatten(&places))
}
