//! Tensor product operators on finite-dimensional Hilbert spaces as
//! first-class values.
//!
//! A tensor product operator of type `(d1, d2) -> D` (with `D = d1·d2`) is a
//! bilinear, norm-preserving map `C^d1 × C^d2 -> C^D`. Any two such operators
//! of the same type differ by a unique unitary on the target space, so an
//! operator is represented here by its *twist*: the unitary `W` with
//! `apply(x, y) = W · kron(x, y)`. Everything else in the crate builds on
//! that representation:
//!
//! - [`numerics`]: dense complex vectors/matrices at small dimension (≤ 64),
//!   Kronecker products, Jacobi eigendecomposition and SVD;
//! - [`tensor_op`]: the operators themselves and the unitary relating two
//!   operators of one type;
//! - [`analysis`]: separability of states (Schmidt decomposition) and
//!   locality of operators (Kronecker factorization), both *relative to a
//!   chosen operator*;
//! - [`composition`]: multipartite spaces assembled from bipartite operators
//!   through pairing operators;
//! - [`measurement`]: observables, spectral projectors, projective
//!   measurement and deterministic sampling;
//! - [`circuit`]: circuits whose gates are annotated with the tensor context
//!   they are expressed in, simulation, the change-of-operator rewrite and
//!   the swap-bridge construction;
//! - [`verify`]: randomized property sweeps for the axioms and the
//!   operator-relation identities (data-parallel when the `parallel` feature
//!   is enabled, which it is by default).

pub mod analysis;
pub mod circuit;
pub mod composition;
pub mod measurement;
pub mod numerics;
pub mod rng;
pub mod tensor_op;
pub mod verify;

pub use analysis::{OperatorFactorization, SchmidtDecomposition, StateFactors};
pub use circuit::{Circuit, CircuitSpace, Gate, Trace};
pub use composition::{MultipartiteContext, PairingOperator, Part};
pub use measurement::{MeasurementResult, Observable};
pub use numerics::{ComplexMatrix, ComplexVector, Tolerance, C64};
pub use tensor_op::{TensorProductOperator, TensorType};

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}{}", ctx_suffix(.context))]
    DimensionMismatch {
        expected: usize,
        actual: usize,
        context: &'static str,
    },
    #[error("matrix is not Hermitian: max |M - M†| = {residual:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { residual: f64, tolerance: f64 },
    #[error("matrix is not unitary: max |U†U - I| = {residual:.3e} exceeds {tolerance:.3e}")]
    NotUnitary { residual: f64, tolerance: f64 },
    #[error("basis images are not orthonormal: max Gram residual {residual:.3e}")]
    NotOrthonormal { residual: f64 },
    #[error("wrong number of basis images: expected {expected}, got {actual}")]
    WrongCount { expected: usize, actual: usize },
    #[error("tensor type mismatch: ({0}) vs ({1})")]
    TypeMismatch(String, String),
    #[error("operation crosses multipartite contexts: {0}")]
    ContextMismatch(String),
    #[error("state is not normalized: |v| = {norm}")]
    NotNormalized { norm: f64 },
    #[error("matrix entries must be finite")]
    NonFiniteEntry,
    #[error("iterative {algorithm} failed to converge after {sweeps} sweeps (internal defect)")]
    ConvergenceFailure {
        algorithm: &'static str,
        sweeps: usize,
    },
}

fn ctx_suffix(context: &str) -> String {
    if context.is_empty() {
        String::new()
    } else {
        format!(" ({context})")
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
