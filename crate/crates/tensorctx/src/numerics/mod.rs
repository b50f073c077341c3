//! Dense complex linear algebra at small dimension (≤ 64).
//!
//! Everything is plain row-major storage over `num_complex::Complex<f64>`.
//! The only nontrivial algorithms are the cyclic Jacobi eigendecomposition
//! for Hermitian matrices and the Hestenes one-sided Jacobi SVD; at these
//! dimensions both converge in a handful of sweeps and deliver high relative
//! accuracy for small singular values, which the rank thresholds downstream
//! rely on.
//!
//! Index convention used by the whole crate: the basis pair `(i, j)` of
//! factor dimensions `(d1, d2)` maps to flat index `i·d2 + j` (lexicographic).

mod eigen;
mod matrix;

pub use eigen::{eig_hermitian, svd, Svd};
pub use matrix::{kron, kron_vec, ComplexMatrix, ComplexVector, C64};

/// Comparison tolerance for predicates.
///
/// Reconstruction-style assertions in the test suites use 1e-9; predicate
/// checks default to 1e-10.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub eps: f64,
}

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-10;

    /// A tolerance with the given `eps`. Negative values are clamped to 0.
    pub fn new(eps: f64) -> Self {
        Self { eps: eps.max(0.0) }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps: Self::DEFAULT_EPS,
        }
    }
}

/// Threshold below which a singular value does not count toward numerical
/// rank: relative `1e-8 · σ_max` with an absolute floor of `1e-12`.
pub fn rank_threshold(sigma_max: f64) -> f64 {
    (1e-8 * sigma_max).max(1e-12)
}

/// Unitarity acceptance threshold for constructor inputs; loose enough to
/// admit matrices read from text files with rounded entries.
pub const UNITARY_INPUT_EPS: f64 = 1e-8;

/// Gap below which adjacent eigenvalues are treated as degenerate.
pub const DEGENERACY_GAP: f64 = 1e-8;
