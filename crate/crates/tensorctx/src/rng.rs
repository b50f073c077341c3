//! Deterministic seeded randomness.
//!
//! Every stochastic entry point in the crate takes an explicit 64-bit seed;
//! there is no hidden global generator. Streams are ChaCha8 initialized from
//! the seed, and sub-streams (one per trial, or one per measurement gate)
//! are derived with the splitmix64 finalizer below, so results are
//! reproducible bit-exactly for a given build.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::numerics::{ComplexMatrix, ComplexVector, C64};

/// splitmix64 mix of a seed and a stream index; used to derive independent
/// sub-seeds (trial k of a suite, measurement gate k of a circuit).
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic generator for a seed.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform(rng: &mut impl Rng) -> f64 {
    rng.gen::<f64>() * 2.0 - 1.0
}

/// Random complex scalar with entries uniform in [-1, 1).
pub fn random_scalar(rng: &mut impl Rng) -> C64 {
    C64::new(uniform(rng), uniform(rng))
}

pub fn random_vector(dim: usize, rng: &mut impl Rng) -> ComplexVector {
    ComplexVector::new((0..dim).map(|_| random_scalar(rng)).collect())
}

/// Random unit vector.
pub fn random_state(dim: usize, rng: &mut impl Rng) -> ComplexVector {
    loop {
        let v = random_vector(dim, rng);
        if v.norm() > 1e-3 {
            return v.normalized();
        }
    }
}

pub fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| random_scalar(rng))
}

/// Random unitary via Gram-Schmidt on a random complex matrix.
pub fn random_unitary(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    loop {
        let raw = random_matrix(dim, dim, rng);
        if let Some(u) = gram_schmidt(&raw) {
            return u;
        }
    }
}

fn gram_schmidt(m: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = m.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut w = m.column(j);
        for _ in 0..2 {
            for k in 0..j {
                let col = out.column(k);
                let overlap = col.inner(&w);
                w = w.sub(&col.scale(overlap));
            }
        }
        if w.norm() < 1e-8 {
            return None; // numerically dependent draw; caller retries
        }
        out.set_column(j, &w.normalized());
    }
    Some(out)
}
