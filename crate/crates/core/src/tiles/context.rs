//! Everything derived from a polynomial and a digit set, computed once.

use thiserror::Error;

use super::bounds::TileBounds;
use crate::dynamics::{DigitError, DigitSet, DynamicsError, EngineError, LatticeDynamics};
use crate::exactnum::{compute_embeddings, EmbeddingData, EmbeddingError, PolynomialSpec, DEFAULT_TOLERANCE};
use crate::lattice::{
    check_primitivity, default_cap, lambda_basis, z_cap_lambda, LatticeError, LatticeHNF, SpanClosure,
};

#[derive(Debug, Error)]
pub enum TileError {
    #[error(transparent)]
    Digits(#[from] DigitError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("preimage tree has {nodes} nodes at one level, limit is {limit}")]
    TreeTooLarge { nodes: usize, limit: usize },
    #[error("depth {depth} needs {count} addresses, limit is {limit}")]
    TooManyAddresses { depth: usize, count: u128, limit: u128 },
}

/// Polynomial, digits, embeddings, the lattices `Λ_{α,m}` and `𝔷 ∩ Λ_{α,m}`, and the fast engine.
#[derive(Clone, Debug)]
pub struct TileContext {
    pub spec: PolynomialSpec,
    pub digits: DigitSet,
    pub emb: EmbeddingData,
    pub lambda: LatticeHNF,
    pub zcap: LatticeHNF,
    pub span: SpanClosure,
    pub engine: LatticeDynamics,
    pub bounds: TileBounds,
}

impl TileContext {
    pub fn new(spec: &PolynomialSpec, digits: &DigitSet) -> Result<Self, TileError> {
        Self::with_tolerance(spec, digits, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(spec: &PolynomialSpec, digits: &DigitSet, tol: f64) -> Result<Self, TileError> {
        let emb = compute_embeddings(spec, tol)?;
        let lambda = lambda_basis(spec, digits.m)?;
        let zcap = z_cap_lambda(spec, digits, digits.m)?;
        let span = check_primitivity(spec, digits, default_cap(spec));
        let engine = LatticeDynamics::new(spec, digits, &lambda, &emb)?;
        let bounds = TileBounds::compute(spec, digits, &emb);
        Ok(TileContext { spec: spec.clone(), digits: digits.clone(), emb, lambda, zcap, span, engine, bounds })
    }
}
