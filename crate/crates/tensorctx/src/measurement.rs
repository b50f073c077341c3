//! Observables, spectral projectors, and projective measurement.
//!
//! An [`Observable`] caches the spectral decomposition of a Hermitian
//! matrix, with eigenvalues deduplicated within a gap of 1e-8 so degenerate
//! eigenvalues share one projector. Measurement branches with probability
//! below tolerance are reported with an *absent* post-state (never a NaN
//! vector): a zero-probability branch has no post-measurement state.

use rand::Rng;

use crate::numerics::{
    eig_hermitian, ComplexMatrix, ComplexVector, Tolerance, C64, DEGENERACY_GAP,
};
use crate::rng;
use crate::{Error, Result};

/// A Hermitian observable together with its spectral decomposition.
#[derive(Debug, Clone)]
pub struct Observable {
    matrix: ComplexMatrix,
    /// `(eigenvalue, projector)` pairs, eigenvalues descending and
    /// deduplicated; projectors orthogonal, idempotent, summing to I.
    spectrum: Vec<(f64, ComplexMatrix)>,
}

impl Observable {
    /// Spectrally decompose a Hermitian matrix.
    pub fn from_matrix(matrix: ComplexMatrix, tol: Tolerance) -> Result<Self> {
        let pairs = eig_hermitian(&matrix, tol)?;
        let mut spectrum: Vec<(f64, ComplexMatrix)> = Vec::new();
        for (lambda, vector) in pairs {
            let proj = vector.outer(&vector);
            match spectrum.last_mut() {
                Some((prev, acc)) if (*prev - lambda).abs() <= DEGENERACY_GAP => {
                    *acc = acc.add(&proj);
                    // keep the representative eigenvalue of the group stable
                }
                _ => spectrum.push((lambda, proj)),
            }
        }
        Ok(Self { matrix, spectrum })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn spectrum(&self) -> &[(f64, ComplexMatrix)] {
        &self.spectrum
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.spectrum.iter().map(|(l, _)| *l).collect()
    }

    /// Rank of the projector for the k-th distinct eigenvalue.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.spectrum[k].1.trace().re.round() as usize
    }
}

/// One branch of a projective measurement.
#[derive(Debug, Clone)]
pub struct MeasurementResult {
    /// The measured eigenvalue.
    pub outcome: f64,
    /// `⟨ψ|P|ψ⟩`, clamped to [0, 1].
    pub probability: f64,
    /// `P|ψ⟩ / √probability`; absent when the branch has probability below
    /// tolerance (an undefined post-state).
    pub post_state: Option<ComplexVector>,
}

/// Deterministic projective measurement: one result per spectral projector,
/// in spectrum order. Probabilities sum to 1 for a normalized state.
pub fn measure(
    state: &ComplexVector,
    obs: &Observable,
    tol: Tolerance,
) -> Result<Vec<MeasurementResult>> {
    if state.dim() != obs.dim() {
        return Err(Error::DimensionMismatch {
            expected: obs.dim(),
            actual: state.dim(),
            context: "measurement",
        });
    }
    let mut results = Vec::with_capacity(obs.spectrum.len());
    for (outcome, projector) in &obs.spectrum {
        let projected = projector.mul_vec(state);
        let probability = projected.norm_sqr().clamp(0.0, 1.0);
        let post_state = if probability > tol.eps {
            Some(projected.scale(C64::new(1.0 / probability.sqrt(), 0.0)))
        } else {
            None
        };
        results.push(MeasurementResult {
            outcome: *outcome,
            probability,
            post_state,
        });
    }
    Ok(results)
}

/// Sample one branch of the measurement distribution. The draw is a single
/// uniform variate from a ChaCha8 stream initialized by `seed`, walked
/// through the cumulative probabilities in spectrum order; the same seed
/// always returns the same branch.
pub fn sample(
    state: &ComplexVector,
    obs: &Observable,
    seed: u64,
    tol: Tolerance,
) -> Result<MeasurementResult> {
    let branches = measure(state, obs, tol)?;
    let mut gen = rng::seeded(seed);
    let u: f64 = gen.gen();
    let mut cumulative = 0.0;
    let mut chosen = None;
    for branch in &branches {
        cumulative += branch.probability;
        if u < cumulative {
            chosen = Some(branch.clone());
            break;
        }
    }
    // guard against cumulative rounding just below 1: take the last branch
    // with nonzero probability
    Ok(chosen.unwrap_or_else(|| {
        branches
            .iter()
            .rev()
            .find(|b| b.probability > 0.0)
            .cloned()
            .unwrap_or_else(|| branches.last().expect("nonempty spectrum").clone())
    }))
}
