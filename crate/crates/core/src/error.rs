use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("singular: matrix does not have full rank")]
    Singular,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not-sublattice: the second lattice is not contained in the first")]
    NotSublattice,
    #[error("oracle-scale-exceeded: {0}")]
    ScaleExceeded(String),
    #[error("not-equivalent-or-not-irreducible: intertwiner space has dimension {0}")]
    NotEquivalent(usize),
    #[error("not-a-lattice: {d} does not divide n+1 = {m}, so L({d}) is not G-stable")]
    NotALattice { d: u64, m: u64 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("classification failure: {0}")]
    Unclassified(String),
    #[error("internal construction error: {0}")]
    Internal(String),
    #[error("malformed matrix json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
