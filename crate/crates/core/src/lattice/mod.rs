//! Rank-n lattices inside ℚ(α): the modules `Λ_{α,m}`, Hermite normal forms, and the
//! translation module `𝔷 = ℤ⟨α, 𝒟⟩`.

mod hnf;
mod lambda;
mod span;

pub use hnf::{column_hnf, ColumnHnf};
pub use lambda::{
    intersect, intersect_generators, lambda0_generators, lambda_basis, lambda_basis_bounded, lattice_membership,
    sign_a0, LatticeError, LatticeHNF, LatticeLabel, DEFAULT_M_BOUND,
};
pub use span::{
    certificate_value, check_primitivity, default_cap, z_cap_lambda, CertificateTerm, Primitivity, SpanClosure,
};
