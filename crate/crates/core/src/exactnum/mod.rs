//! Exact arithmetic in ℚ(α) and ℤ[α, α⁻¹]: polynomial validation, Laurent carriers,
//! canonical coordinates, membership tests and archimedean embeddings.

mod embedding;
mod field;
mod laurent;
mod poly;
mod reduce;
mod schur_cohn;

pub use embedding::{compute_embeddings, embed_arch, EmbeddingData, EmbeddingError, Place, DEFAULT_TOLERANCE};
pub use field::{solve_rational, to_field_vector, FieldVector};
pub use laurent::{LaurentElem, LaurentParseError};
pub use poly::{
    expanding_report, is_expanding, validate_spec, validate_spec_i64, ExpandingReport, Irreducibility, PolynomialSpec,
    SpecError,
};
pub use reduce::{alpha_residue, beta_residue, reduce_bottom, reduce_top, reduce_top_shifted, Membership};
pub use schur_cohn::{schur_stable, SchurCohnReport, SchurCohnStep};

/// Serializes a big integer as a decimal string.
pub(crate) fn ser_bigint<S: serde::Serializer>(v: &num_bigint::BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Serializes big integers as decimal strings.
pub(crate) fn ser_bigint_seq<S: serde::Serializer>(v: &[num_bigint::BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}
