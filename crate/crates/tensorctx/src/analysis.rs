//! Separability and locality *relative to* a tensor product operator.
//!
//! A state is separable relative to an operator `t` exactly when its
//! `t`-unfolding has rank 1; an operator `L` is local relative to `t`
//! exactly when the Kronecker rearrangement of `twist† · L · twist` has
//! rank 1. Both ranks use the shared threshold of
//! [`crate::numerics::rank_threshold`]. The same state or operator can be
//! separable/local for one operator and not for another; that dependence is
//! the point of making the operator an explicit argument.

use crate::numerics::{rank_threshold, svd, ComplexMatrix, ComplexVector, C64, UNITARY_INPUT_EPS};
use crate::tensor_op::TensorProductOperator;
use crate::{Error, Result};

/// Schmidt decomposition of a state relative to a tensor product operator:
/// `state = Σ coefficients[k] · t.apply(left[k], right[k])`.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    /// Nonnegative, descending.
    pub coefficients: Vec<f64>,
    /// Orthonormal, dimension `d1`.
    pub left_vectors: Vec<ComplexVector>,
    /// Orthonormal, dimension `d2`.
    pub right_vectors: Vec<ComplexVector>,
    /// Count of coefficients above the rank threshold.
    pub rank: usize,
}

/// Kronecker factors of an operator relative to a tensor product operator.
#[derive(Debug, Clone)]
pub struct OperatorFactorization {
    /// Frobenius norm 1, peak entry real nonnegative.
    pub left: ComplexMatrix,
    /// Carries the magnitude.
    pub right: ComplexMatrix,
    /// `max |L - lift(left, right)|`.
    pub residual: f64,
}

/// Unit factors of a separable state, from [`factorize_state`].
#[derive(Debug, Clone)]
pub struct StateFactors {
    pub left: ComplexVector,
    pub right: ComplexVector,
}

fn check_state_dim(state: &ComplexVector, t: &TensorProductOperator) -> Result<()> {
    if state.dim() != t.target_dim() {
        return Err(Error::DimensionMismatch {
            expected: t.target_dim(),
            actual: state.dim(),
            context: "state dimension",
        });
    }
    Ok(())
}

/// Coefficient matrix of a state in the product basis of `t`:
/// the `d1 × d2` matrix `M` with `M[i,j]` = component of `twist† · state`
/// at flat index `i·d2 + j`.
pub fn unfold(state: &ComplexVector, t: &TensorProductOperator) -> Result<ComplexMatrix> {
    check_state_dim(state, t)?;
    let coeffs = t.twist().dagger().mul_vec(state);
    let (d1, d2) = (t.ttype().d1, t.ttype().d2);
    Ok(ComplexMatrix::from_fn(d1, d2, |i, j| {
        coeffs.get(i * d2 + j)
    }))
}

/// Schmidt decomposition relative to `t`, via SVD of the unfolding.
pub fn schmidt(state: &ComplexVector, t: &TensorProductOperator) -> Result<SchmidtDecomposition> {
    let m = unfold(state, t)?;
    let dec = svd(&m)?;
    let threshold = rank_threshold(dec.sigma.first().copied().unwrap_or(0.0));
    let rank = dec.sigma.iter().filter(|&&s| s > threshold).count();
    let k = dec.sigma.len();
    let left_vectors: Vec<ComplexVector> = (0..k).map(|j| dec.u.column(j)).collect();
    // state = Σ σ_k · apply(u_k, conj(v_k)): the unfolding entries factor as
    // M[i,j] = Σ σ_k U[i,k]·conj(V[j,k])
    let right_vectors: Vec<ComplexVector> = (0..k)
        .map(|j| {
            let col = dec.v.column(j);
            ComplexVector::new(col.entries().iter().map(|z| z.conj()).collect())
        })
        .collect();
    Ok(SchmidtDecomposition {
        coefficients: dec.sigma,
        left_vectors,
        right_vectors,
        rank,
    })
}

/// If `state` is separable relative to `t`, return unit factors `(x, y)`
/// with `t.apply(x, y) = state` up to global phase. The phase convention:
/// `x` is rotated so its largest-magnitude entry is real nonnegative, and
/// the remaining phase is absorbed into `y`.
pub fn factorize_state(
    state: &ComplexVector,
    t: &TensorProductOperator,
) -> Result<Option<StateFactors>> {
    let dec = schmidt(state, t)?;
    if dec.rank != 1 {
        return Ok(None);
    }
    let raw_left = &dec.left_vectors[0];
    let peak = raw_left.get(raw_left.peak_index());
    let phase = if peak.norm() > 0.0 {
        peak.conj() / peak.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    let left = raw_left.scale(phase);
    let right = dec.right_vectors[0].scale(phase.conj()).normalized();
    Ok(Some(StateFactors { left, right }))
}

/// Pitsianis–Van Loan rearrangement: reshape the `D × D` matrix `M`
/// (`D = d1·d2`) into the `d1² × d2²` matrix `R` with
/// `R[(i·d1 + j), (k·d2 + l)] = M[(i·d2 + k), (j·d2 + l)]`, so that `M` is a
/// Kronecker product `A ⊗ B` exactly when `R = vec(A)·vec(B)ᵀ` has rank 1.
pub fn rearrange(m: &ComplexMatrix, d1: usize, d2: usize) -> ComplexMatrix {
    assert_eq!(m.rows(), d1 * d2);
    assert_eq!(m.cols(), d1 * d2);
    ComplexMatrix::from_fn(d1 * d1, d2 * d2, |rc, cc| {
        let (i, j) = (rc / d1, rc % d1);
        let (k, l) = (cc / d2, cc % d2);
        m.get(i * d2 + k, j * d2 + l)
    })
}

/// Decide whether `L` is local relative to `t` (i.e. `L = lift(t, A, B)`
/// for some `A`, `B`) and return the factors when it is.
///
/// The scalar split is fixed by convention: `left` has Frobenius norm 1 with
/// its largest-magnitude entry real nonnegative; `right` carries the
/// magnitude.
pub fn factorize_operator(
    l: &ComplexMatrix,
    t: &TensorProductOperator,
) -> Result<Option<OperatorFactorization>> {
    let d = t.target_dim();
    if l.rows() != d || l.cols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: l.rows(),
            context: "operator dimension",
        });
    }
    let (d1, d2) = (t.ttype().d1, t.ttype().d2);
    let in_product_basis = t.twist().dagger().mul(l).mul(t.twist());
    let r = rearrange(&in_product_basis, d1, d2);
    let dec = svd(&r)?;
    let threshold = rank_threshold(dec.sigma.first().copied().unwrap_or(0.0));
    let rank = dec.sigma.iter().filter(|&&s| s > threshold).count();
    if rank != 1 {
        return Ok(None);
    }

    let u0 = dec.u.column(0);
    let v0 = dec.v.column(0);
    let peak = u0.get(u0.peak_index());
    let phase = if peak.norm() > 0.0 {
        peak.conj() / peak.norm()
    } else {
        C64::new(1.0, 0.0)
    };
    let left_vec = u0.scale(phase);
    let sigma0 = dec.sigma[0];
    let right_vec = ComplexVector::new(
        v0.entries()
            .iter()
            .map(|z| z.conj() * sigma0 * phase.conj())
            .collect(),
    );
    let left = ComplexMatrix::from_fn(d1, d1, |i, j| left_vec.get(i * d1 + j));
    let right = ComplexMatrix::from_fn(d2, d2, |k, lc| right_vec.get(k * d2 + lc));
    let residual = t.lift(&left, &right)?.max_diff(l);
    Ok(Some(OperatorFactorization {
        left,
        right,
        residual,
    }))
}

/// Similarity transform `W† · L · W`; moves an operator between tensor
/// contexts when `W` is the relating unitary of the two operators.
pub fn conjugate(l: &ComplexMatrix, w: &ComplexMatrix) -> Result<ComplexMatrix> {
    if l.rows() != w.rows() || l.cols() != w.cols() || !l.is_square() {
        return Err(Error::DimensionMismatch {
            expected: w.rows(),
            actual: l.rows(),
            context: "conjugation",
        });
    }
    w.check_unitary(UNITARY_INPUT_EPS)?;
    Ok(w.dagger().mul(l).mul(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{kron, Tolerance};
    use crate::tensor_op::gates::*;
    use crate::tensor_op::TensorProductOperator;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn t1() -> TensorProductOperator {
        TensorProductOperator::canonical(2, 2).labeled("tensor1")
    }

    fn t2() -> TensorProductOperator {
        t1().from_twist(&cx()).unwrap().labeled("tensor2")
    }

    fn matrix_s() -> ComplexMatrix {
        bell_twist()
    }

    #[test]
    fn unfold_product_state_is_outer_product() {
        let t = t1();
        let x = ket_plus();
        let y = ket1();
        let state = t.apply(&x, &y).unwrap();
        let m = unfold(&state, &t).unwrap();
        let mut expected = ComplexMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                expected.set(i, j, x.get(i) * y.get(j));
            }
        }
        assert!(m.max_diff(&expected) < 1e-15);
    }

    #[test]
    fn unfold_bell_under_both_operators() {
        let bell00 = bell(0, 0);
        let m1 = unfold(&bell00, &t1()).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert!(m1.max_diff(&ComplexMatrix::identity(2).scale(c(s, 0.0))) < 1e-15);

        let m2 = unfold(&bell00, &t2()).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[&[s, 0.0], &[s, 0.0]]);
        assert!(m2.max_diff(&expected) < 1e-15);
    }

    #[test]
    fn schmidt_rank_depends_on_operator() {
        let bell00 = bell(0, 0);
        let s = 1.0 / 2f64.sqrt();

        let d1 = schmidt(&bell00, &t1()).unwrap();
        assert_eq!(d1.rank, 2);
        assert!((d1.coefficients[0] - s).abs() < 1e-12);
        assert!((d1.coefficients[1] - s).abs() < 1e-12);

        let d2 = schmidt(&bell00, &t2()).unwrap();
        assert_eq!(d2.rank, 1);
        assert!((d2.coefficients[0] - 1.0).abs() < 1e-12);
        assert!(d2.coefficients[1].abs() < 1e-12);
    }

    #[test]
    fn schmidt_reconstructs_state() {
        use crate::rng;
        let mut gen = rng::seeded(3);
        for t in [t1(), t2(), TensorProductOperator::canonical(2, 3)] {
            let state = rng::random_state(t.target_dim(), &mut gen);
            let dec = schmidt(&state, &t).unwrap();
            let mut rebuilt = ComplexVector::zeros(t.target_dim());
            for k in 0..dec.coefficients.len() {
                let term = t
                    .apply(&dec.left_vectors[k], &dec.right_vectors[k])
                    .unwrap()
                    .scale(c(dec.coefficients[k], 0.0));
                rebuilt = rebuilt.add(&term);
            }
            assert!(rebuilt.max_diff(&state) < 1e-12);
            let total: f64 = dec.coefficients.iter().map(|s| s * s).sum();
            assert!((total - state.norm_sqr()).abs() < 1e-12);
        }
    }

    #[test]
    fn product_states_have_rank_one() {
        use crate::rng;
        let mut gen = rng::seeded(8);
        for t in [t1(), t2()] {
            let x = rng::random_state(2, &mut gen);
            let y = rng::random_state(2, &mut gen);
            let state = t.apply(&x, &y).unwrap();
            assert_eq!(schmidt(&state, &t).unwrap().rank, 1);
        }
    }

    #[test]
    fn factorize_state_bell_example() {
        // the Bell state of each operator is separable for the other
        let bell_t1 = bell(0, 0);
        let factors = factorize_state(&bell_t1, &t2()).unwrap().unwrap();
        assert!(factors.left.max_diff(&ket_plus()) < 1e-12);
        assert!(factors.right.max_diff(&ket0()) < 1e-12);

        let bell_t2 = t2().twist().mul_vec(&bell(0, 0)); // = (e0+e2)/√2
        let factors = factorize_state(&bell_t2, &t1()).unwrap().unwrap();
        assert!(factors.left.max_diff(&ket_plus()) < 1e-12);
        assert!(factors.right.max_diff(&ket0()) < 1e-12);

        // while each is entangled for its own operator
        assert!(factorize_state(&bell_t1, &t1()).unwrap().is_none());
    }

    #[test]
    fn factorize_state_roundtrip_with_phase() {
        use crate::rng;
        let mut gen = rng::seeded(21);
        let t3 = TensorProductOperator::with_twist(2, 2, matrix_s(), "tensor3").unwrap();
        for t in [t1(), t2(), t3] {
            let x = rng::random_state(2, &mut gen);
            let y = rng::random_state(2, &mut gen);
            let state = t.apply(&x, &y).unwrap();
            let f = factorize_state(&state, &t).unwrap().unwrap();
            let rebuilt = t.apply(&f.left, &f.right).unwrap();
            assert!(rebuilt.phase_residual(&state) < 1e-12);
            // convention: left factor's peak entry is real nonnegative
            let peak = f.left.get(f.left.peak_index());
            assert!(peak.im.abs() < 1e-12 && peak.re >= 0.0);
        }
    }

    #[test]
    fn factorize_operator_kron_product() {
        let t = t1();
        let zz = kron(&pauli_z(), &pauli_z());
        let f = factorize_operator(&zz, &t).unwrap().unwrap();
        assert!(f.residual < 1e-12);
        let rebuilt = t.lift(&f.left, &f.right).unwrap();
        assert!(rebuilt.max_diff(&zz) < 1e-12);
        // split convention: left has Frobenius norm 1
        assert!((f.left.fro_norm() - 1.0).abs() < 1e-12);
    }

    // Independent oracle: a matrix is a Kronecker product iff every 2x2
    // minor of its rearrangement vanishes. CX has a nonvanishing minor, so
    // no factorization exists for the canonical operator.
    #[test]
    fn factorize_operator_cx_is_nonlocal() {
        let t = t1();
        let r = rearrange(&cx(), 2, 2);
        let mut max_minor = 0.0f64;
        for r0 in 0..r.rows() {
            for r1 in (r0 + 1)..r.rows() {
                for c0 in 0..r.cols() {
                    for c1 in (c0 + 1)..r.cols() {
                        let det = r.get(r0, c0) * r.get(r1, c1) - r.get(r0, c1) * r.get(r1, c0);
                        max_minor = max_minor.max(det.norm());
                    }
                }
            }
        }
        assert!(max_minor > 0.5, "oracle: rearranged CX has rank ≥ 2");
        assert!(factorize_operator(&cx(), &t).unwrap().is_none());
    }

    #[test]
    fn observable_s_is_local_for_the_twisted_operator() {
        let s = matrix_s();
        let f = factorize_operator(&s, &t2()).unwrap();
        let f = f.expect("S factors under the CX-twisted operator");
        assert!(f.residual < 1e-10);

        // and its CX conjugate factors under the canonical operator, with
        // the right factor proportional to the identity
        let s_prime = conjugate(&s, &cx()).unwrap();
        let g = factorize_operator(&s_prime, &t1()).unwrap().unwrap();
        assert!(g.residual < 1e-10);
        let right_traceless = g
            .right
            .sub(&ComplexMatrix::identity(2).scale(g.right.trace() / c(2.0, 0.0)));
        assert!(right_traceless.max_abs() < 1e-10);
    }

    #[test]
    fn conjugate_coordination_identity() {
        // conjugating the locally-lifted observable by the relating unitary
        // doubles it: CX (I kron Z) CX = Z kron Z
        let i_z = t1().lift(&identity(2), &pauli_z()).unwrap();
        let moved = conjugate(&i_z, &cx()).unwrap();
        assert!(moved.max_diff(&kron(&pauli_z(), &pauli_z())) < 1e-15);

        // and symmetrically back
        let zz = t2().lift(&identity(2), &pauli_z()).unwrap();
        let back = conjugate(&zz, &cx()).unwrap();
        assert!(back.max_diff(&i_z) < 1e-15);

        let same = conjugate(&i_z, &ComplexMatrix::identity(4)).unwrap();
        assert!(same.max_diff(&i_z) < 1e-15);
    }

    #[test]
    fn conjugate_preserves_spectrum_of_s() {
        use crate::numerics::eig_hermitian;
        let s_prime = conjugate(&matrix_s(), &cx()).unwrap();
        let pairs = eig_hermitian(&s_prime, Tolerance::default()).unwrap();
        let eigs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        for (k, expected) in [1.0, 1.0, -1.0, -1.0].iter().enumerate() {
            assert!((eigs[k] - expected).abs() < 1e-10, "eigs: {eigs:?}");
        }
    }

    #[test]
    fn conjugate_rejects_non_unitary() {
        let m = ComplexMatrix::identity(4).scale(c(2.0, 0.0));
        assert!(matches!(
            conjugate(&ComplexMatrix::identity(4), &m),
            Err(Error::NotUnitary { .. })
        ));
    }
}
