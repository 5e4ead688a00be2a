//! Desk-scale limits. Exceeding one is reported as an error, never by
//! silently truncating a computation.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest `n` for the polytabloid expansion (`n!` terms per tableau).
    pub oracle_n: usize,
    /// Largest index `m` for direct Hermite-form enumeration.
    pub hnf_index: u64,
    /// Largest `p^n` for submodule spinning over the prime field.
    pub spin_size: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { oracle_n: 7, hnf_index: 512, spin_size: 1_000_000 }
    }
}
