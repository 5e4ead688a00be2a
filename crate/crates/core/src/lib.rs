//! Solomon zeta functions of the integral lattices in the hook representation
//! of the symmetric group, with exact arithmetic and brute-force checks.
//!
//! Everything numeric is generic over an integer [`Scalar`]; the aliases below
//! fix it to [`BigInt`].

pub mod config;
pub mod craig;
pub mod error;
pub mod exactmat;
pub mod scalar;
pub mod specht;
pub mod verify;
pub mod zeta;

pub use num_bigint::BigInt;

pub use config::Bounds;
pub use error::{Error, Result};
pub use scalar::Scalar;

pub type IntMatrix = exactmat::Matrix<BigInt>;
pub type LatticeBasis = exactmat::Lattice<BigInt>;
pub type RepGenerators = specht::Generators<BigInt>;
pub type Rational = num_rational::Ratio<BigInt>;
pub type IntPoly = zeta::Poly<BigInt>;
