use super::matrix::{ComplexMatrix, ComplexVector, C64};
use super::{Tolerance, DEGENERACY_GAP};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// One Jacobi rotation for the Hermitian 2x2 block
/// `[[app, apq], [conj(apq), aqq]]` with `r = |apq| > 0` and unit phase
/// `alpha = apq / r`. Returns `(c, s, alpha)` defining the unitary
/// `R[p,p] = c, R[p,q] = -s·alpha, R[q,p] = s·conj(alpha), R[q,q] = c`
/// for which `R† A R` has zero `(p,q)` entry.
fn rotation(app: f64, aqq: f64, apq: C64) -> (f64, f64, C64) {
    let r = apq.norm();
    let alpha = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    // smaller-magnitude root of t² - 2τt - 1 = 0
    let t = if tau >= 0.0 {
        -1.0 / (tau + (tau * tau + 1.0).sqrt())
    } else {
        1.0 / (-tau + (tau * tau + 1.0).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    (c, s, alpha)
}

/// Apply the rotation to columns `p, q` of `m` (i.e. `m ← m·R`).
fn rotate_columns(m: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, alpha: C64) {
    let ac = alpha.conj();
    for k in 0..m.rows() {
        let mp = m.get(k, p);
        let mq = m.get(k, q);
        m.set(k, p, mp * c + mq * s * ac);
        m.set(k, q, mp * (-s) * alpha + mq * c);
    }
}

/// Apply the adjoint rotation to rows `p, q` of `m` (i.e. `m ← R†·m`).
fn rotate_rows(m: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, alpha: C64) {
    let ac = alpha.conj();
    for k in 0..m.cols() {
        let mp = m.get(p, k);
        let mq = m.get(q, k);
        m.set(p, k, mp * c + mq * s * alpha);
        m.set(q, k, mp * (-s) * ac + mq * c);
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi sweeps.
///
/// Returns `(eigenvalue, eigenvector)` pairs sorted by descending
/// eigenvalue. Within a group of near-degenerate eigenvalues (gap below
/// 1e-8) the vectors are ordered by the index of their largest-magnitude
/// component, and every vector is phased so that component is real and
/// positive, making the output deterministic.
pub fn eig_hermitian(m: &ComplexMatrix, tol: Tolerance) -> Result<Vec<(f64, ComplexVector)>> {
    m.check_hermitian(tol.eps)?;
    let n = m.rows();
    if n == 0 {
        return Ok(Vec::new());
    }

    // work on the Hermitian part; the checked residual is within tolerance
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| (m.get(i, j) + m.get(j, i).conj()) * 0.5);
    let mut v = ComplexMatrix::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    let stop = scale * 1e-15;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq.norm() <= stop {
                    continue;
                }
                let (c, s, alpha) = rotation(a.get(p, p).re, a.get(q, q).re, apq);
                rotate_columns(&mut a, p, q, c, s, alpha);
                rotate_rows(&mut a, p, q, c, s, alpha);
                rotate_columns(&mut v, p, q, c, s, alpha);
                rotated = true;
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure {
            algorithm: "Jacobi eigendecomposition",
            sweeps: MAX_SWEEPS,
        });
    }

    let mut pairs: Vec<(f64, ComplexVector)> = (0..n)
        .map(|j| (a.get(j, j).re, v.column(j).canonical_phase()))
        .collect();
    sort_descending_with_ties(&mut pairs);
    Ok(pairs)
}

/// Sort spectral pairs by descending value; order near-degenerate groups by
/// the peak-component index of their vectors.
fn sort_descending_with_ties(pairs: &mut [(f64, ComplexVector)]) {
    pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let mut start = 0;
    while start < pairs.len() {
        let mut end = start + 1;
        while end < pairs.len() && (pairs[end - 1].0 - pairs[end].0).abs() <= DEGENERACY_GAP {
            end += 1;
        }
        pairs[start..end].sort_by_key(|(_, vec)| vec.peak_index());
        start = end;
    }
}

/// Thin singular value decomposition `M = U · diag(sigma) · V†`.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `rows × k` with orthonormal columns, `k = min(rows, cols)`.
    pub u: ComplexMatrix,
    /// Singular values, descending.
    pub sigma: Vec<f64>,
    /// `cols × k` with orthonormal columns.
    pub v: ComplexMatrix,
}

impl Svd {
    /// `U · diag(sigma) · V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let k = self.sigma.len();
        let mut scaled = self.u.clone();
        for j in 0..k {
            for i in 0..scaled.rows() {
                scaled.set(i, j, scaled.get(i, j) * self.sigma[j]);
            }
        }
        scaled.mul(&self.v.dagger())
    }
}

/// Singular value decomposition by Hestenes one-sided Jacobi.
///
/// Column pairs of the working copy are orthogonalized until the Gram matrix
/// is diagonal; singular values are the final column norms. This keeps full
/// relative accuracy for small singular values, which the rank predicates
/// need. Failure to converge at these dimensions indicates an internal
/// defect and is reported as an error rather than silently truncated.
pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    if m.rows() < m.cols() {
        let t = svd(&m.dagger())?;
        return Ok(Svd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        });
    }

    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut v = ComplexMatrix::identity(cols);

    let mut converged = cols < 2;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let mut gpp = 0.0;
                let mut gqq = 0.0;
                let mut gpq = C64::new(0.0, 0.0);
                for k in 0..rows {
                    let ap = a.get(k, p);
                    let aq = a.get(k, q);
                    gpp += ap.norm_sqr();
                    gqq += aq.norm_sqr();
                    gpq += ap.conj() * aq;
                }
                if gpq.norm() <= 1e-15 * (gpp * gqq).sqrt().max(f64::MIN_POSITIVE) {
                    continue;
                }
                let (c, s, alpha) = rotation(gpp, gqq, gpq);
                rotate_columns(&mut a, p, q, c, s, alpha);
                rotate_columns(&mut v, p, q, c, s, alpha);
                rotated = true;
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure {
            algorithm: "one-sided Jacobi SVD",
            sweeps: MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..cols).collect();
    let norms: Vec<f64> = (0..cols).map(|j| a.column(j).norm()).collect();
    order.sort_by(|&x, &y| norms[y].partial_cmp(&norms[x]).unwrap().then(x.cmp(&y)));

    let sigma_max = norms.iter().cloned().fold(0.0, f64::max);
    let negligible = sigma_max * f64::EPSILON;

    let mut u = ComplexMatrix::zeros(rows, cols);
    let mut vv = ComplexMatrix::zeros(cols, cols);
    let mut sigma = Vec::with_capacity(cols);
    for (slot, &j) in order.iter().enumerate() {
        sigma.push(norms[j]);
        let mut vcol = v.column(j);
        // phase convention: peak entry of the V column real positive
        let peak = vcol.get(vcol.peak_index());
        let phase = if peak.norm() > 0.0 {
            peak.conj() / peak.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        vcol = vcol.scale(phase);
        vv.set_column(slot, &vcol);
        if norms[j] > negligible {
            u.set_column(slot, &a.column(j).scale(phase / norms[j]));
        }
    }
    complete_zero_columns(&mut u, &sigma, negligible);

    Ok(Svd { u, sigma, v: vv })
}

/// Replace columns whose singular value is numerically zero with an
/// orthonormal completion (Gram-Schmidt against the standard basis), so the
/// returned factors always have orthonormal columns. Zero-σ slots form a
/// suffix after the descending sort, so when slot `j` is completed every
/// slot before it already holds an orthonormal column.
fn complete_zero_columns(u: &mut ComplexMatrix, sigma: &[f64], negligible: f64) {
    let rows = u.rows();
    let project = |w: ComplexVector, u: &ComplexMatrix, upto: usize| {
        let mut w = w;
        for k in 0..upto {
            let col = u.column(k);
            let overlap = col.inner(&w);
            w = w.sub(&col.scale(overlap));
        }
        w
    };
    for j in 0..sigma.len() {
        if sigma[j] > negligible {
            continue;
        }
        let mut best: Option<ComplexVector> = None;
        let mut best_norm = 0.0;
        for candidate in 0..rows {
            let w = project(ComplexVector::basis(rows, candidate), u, j);
            let n = w.norm();
            if n > best_norm {
                best_norm = n;
                best = Some(w);
            }
        }
        if let Some(w) = best {
            let w = project(w, u, j); // second pass for orthogonality
            u.set_column(j, &w.normalized());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn pauli_z() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
    }

    fn cx() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ])
    }

    #[test]
    fn eig_z() {
        let pairs = eig_hermitian(&pauli_z(), Tolerance::default()).unwrap();
        assert_eq!(pairs.len(), 2);
        assert!((pairs[0].0 - 1.0).abs() < 1e-12);
        assert!((pairs[1].0 + 1.0).abs() < 1e-12);
        assert!(pairs[0].1.max_diff(&ComplexVector::basis(2, 0)) < 1e-12);
        assert!(pairs[1].1.max_diff(&ComplexVector::basis(2, 1)) < 1e-12);
    }

    // Oracle for the CX spectrum: CX is an involution (CX² = I), so its
    // eigenvalues are ±1 with multiplicities fixed by the trace:
    // m₊ - m₋ = tr = 2 and m₊ + m₋ = 4, hence (1, 1, 1, -1).
    #[test]
    fn eig_cx_spectrum_matches_involution_oracle() {
        let m = cx();
        assert!(m.mul(&m).max_diff(&ComplexMatrix::identity(4)) < 1e-15);
        let trace = m.trace().re;
        let m_plus = ((4.0 + trace) / 2.0).round() as usize;
        assert_eq!(m_plus, 3);

        let pairs = eig_hermitian(&m, Tolerance::default()).unwrap();
        let eigs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        for (k, expected) in [1.0, 1.0, 1.0, -1.0].iter().enumerate() {
            assert!((eigs[k] - expected).abs() < 1e-12, "eigs = {eigs:?}");
        }
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let m = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(
            eig_hermitian(&m, Tolerance::default()),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [2usize, 3, 5, 8] {
            let raw = ComplexMatrix::from_fn(n, n, |_, _| {
                c(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0)
            });
            let herm = raw.add(&raw.dagger()).scale(c(0.5, 0.0));
            let pairs = eig_hermitian(&herm, Tolerance::default()).unwrap();

            let mut recon = ComplexMatrix::zeros(n, n);
            let mut completeness = ComplexMatrix::zeros(n, n);
            for (lambda, vec) in &pairs {
                let proj = vec.outer(vec);
                recon = recon.add(&proj.scale(c(*lambda, 0.0)));
                completeness = completeness.add(&proj);
            }
            assert!(recon.max_diff(&herm) < 1e-9);
            assert!(completeness.max_diff(&ComplexMatrix::identity(n)) < 1e-9);
        }
    }

    #[test]
    fn svd_identity() {
        let s = svd(&ComplexMatrix::identity(2)).unwrap();
        assert!((s.sigma[0] - 1.0).abs() < 1e-14);
        assert!((s.sigma[1] - 1.0).abs() < 1e-14);
    }

    // Oracle via the characteristic polynomial of M·M† at 2x2: for the
    // unfolded Bell coefficient matrix M = I/√2, M·M† = I/2 has the double
    // root 1/2, so both singular values are 1/√2.
    #[test]
    fn svd_bell_unfolding_matches_gram_oracle() {
        let m = ComplexMatrix::identity(2).scale(c(1.0 / 2f64.sqrt(), 0.0));
        let gram = m.mul(&m.dagger());
        let (tr, det) = (gram.trace().re, {
            (gram.get(0, 0) * gram.get(1, 1) - gram.get(0, 1) * gram.get(1, 0)).re
        });
        let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
        let roots = [tr / 2.0 + disc, tr / 2.0 - disc];
        let expected: Vec<f64> = roots.iter().map(|r| r.sqrt()).collect();

        let s = svd(&m).unwrap();
        assert!((s.sigma[0] - expected[0]).abs() < 1e-14);
        assert!((s.sigma[1] - expected[1]).abs() < 1e-14);
        assert!((s.sigma[0] - 1.0 / 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn svd_diag_with_zero() {
        let m = ComplexMatrix::from_real_rows(&[&[3.0, 0.0], &[0.0, 0.0]]);
        let s = svd(&m).unwrap();
        assert!((s.sigma[0] - 3.0).abs() < 1e-14);
        assert!(s.sigma[1].abs() < 1e-14);
        assert!(s.reconstruct().max_diff(&m) < 1e-12);
        // orthonormal even with a zero singular value
        assert!(s.u.unitary_residual() < 1e-12);
        assert!(s.v.unitary_residual() < 1e-12);
    }

    #[test]
    fn svd_rectangular_both_orientations() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for (rows, cols) in [(3usize, 2usize), (2, 3), (4, 4), (8, 5)] {
            let m = ComplexMatrix::from_fn(rows, cols, |_, _| {
                c(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0)
            });
            let s = svd(&m).unwrap();
            assert!(s.reconstruct().max_diff(&m) < 1e-10);
            assert!(s.u.unitary_residual() < 1e-10);
            assert!(s.v.unitary_residual() < 1e-10);
            for w in s.sigma.windows(2) {
                assert!(w[0] >= w[1]);
            }
        }
    }
}
