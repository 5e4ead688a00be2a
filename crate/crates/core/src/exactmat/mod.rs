//! Exact integer and rational linear algebra, and lattice arithmetic built on
//! the Hermite normal form.

pub mod hnf;
pub mod lattice;
pub mod matrix;
pub mod rational;

pub use hnf::{hnf, is_hnf};
pub use lattice::{is_scalar_multiple, is_sublattice, lattice_index, lattice_intersect, lattice_sum, Lattice};
pub use matrix::{Matrix, MatrixJson};

use crate::error::Result;
use crate::scalar::Scalar;

/// Exact determinant of a square matrix.
pub fn det<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    m.det()
}
