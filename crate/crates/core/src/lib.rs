//! Rational self-affine tiles: exact arithmetic, lattices, digit dynamics, point-cloud
//! approximations and tiling verification.

pub mod dynamics;
pub mod exactnum;
pub mod lattice;
pub mod tiles;
pub mod verify;

pub use dynamics::{Address, DigitSet};
pub use exactnum::{FieldVector, LaurentElem, PolynomialSpec};
pub use lattice::LatticeHNF;
pub use tiles::{TileCloud, TileContext, TileError};
pub use verify::{MultiplicityReport, TilingCertificate};
