//! Digit dynamics: digit sets, the map `T_α` and its preimages, address enumeration, the
//! β-adic surrogate expansion, and shift radix systems.

mod address;
mod digits;
mod engine;
mod srs;
mod surrogate;
mod tmap;

pub use address::{addresses, Address, Addresses, DEFAULT_ADDRESS_LIMIT};
pub use digits::{digits_from_strs, validate_digits, validate_digits_with, DigitError, DigitSet};
pub use engine::{EngineError, LatticeDynamics};
pub use srs::{
    iota, iota_basis, iota_inverse, iota_inverse_integer, iota_rational, srs_digit, srs_preimages, srs_tau, SrsParam,
};
pub use surrogate::{surrogate, surrogate_start, SurrogateExpansion};
pub use tmap::{preimages, preimages_in_lambda, t_alpha, t_alpha_orbit, DynamicsError};
