use std::fmt;

use num_complex::Complex;

use super::Tolerance;
use crate::{Error, Result};

/// Complex scalar used throughout the crate.
pub type C64 = Complex<f64>;

/// Dense complex vector.
#[derive(Clone, PartialEq)]
pub struct ComplexVector {
    entries: Vec<C64>,
}

impl ComplexVector {
    pub fn new(entries: Vec<C64>) -> Self {
        Self { entries }
    }

    /// Validating constructor: rejects non-finite entries.
    pub fn checked(entries: Vec<C64>) -> Result<Self> {
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        Ok(Self { entries })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: vec![C64::new(0.0, 0.0); dim],
        }
    }

    /// Computational basis vector `e_index`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dim {dim}");
        let mut v = Self::zeros(dim);
        v.entries[index] = C64::new(1.0, 0.0);
        v
    }

    pub fn from_real(reals: &[f64]) -> Self {
        Self {
            entries: reals.iter().map(|&r| C64::new(r, 0.0)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> C64 {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, value: C64) {
        self.entries[i] = value;
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            entries: self.entries.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Inner product `⟨self|other⟩` (conjugate-linear in `self`).
    pub fn inner(&self, other: &Self) -> C64 {
        assert_eq!(self.dim(), other.dim());
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n > 0.0 {
            self.scale(C64::new(1.0 / n, 0.0))
        } else {
            self.clone()
        }
    }

    /// Index of the first entry of largest magnitude.
    pub fn peak_index(&self) -> usize {
        let mut best = 0;
        let mut best_mag = -1.0;
        for (i, z) in self.entries.iter().enumerate() {
            let m = z.norm_sqr();
            if m > best_mag {
                best_mag = m;
                best = i;
            }
        }
        best
    }

    /// Rotate by a global phase so the largest-magnitude entry is real and
    /// nonnegative. Zero vectors are returned unchanged.
    pub fn canonical_phase(&self) -> Self {
        let k = self.peak_index();
        let peak = self.entries[k];
        let mag = peak.norm();
        if mag == 0.0 {
            return self.clone();
        }
        self.scale(peak.conj() / mag)
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Interpret as a column matrix.
    pub fn as_column(&self) -> ComplexMatrix {
        ComplexMatrix::new(self.dim(), 1, self.entries.clone())
    }

    /// Outer product `self · other†`.
    pub fn outer(&self, other: &Self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim(), other.dim());
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                m.set(i, j, self.entries[i] * other.entries[j].conj());
            }
        }
        m
    }

    /// Equality up to a global phase: true iff there is a unit complex `c`
    /// with `|self - c·other| ≤ tol.eps`, where `c` is computed from the
    /// largest-magnitude entry of `other`.
    pub fn approx_eq_phase(&self, other: &Self, tol: Tolerance) -> Result<bool> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
                context: "phase comparison",
            });
        }
        Ok(self.phase_residual(other) <= tol.eps)
    }

    /// The residual `|self - c·other|` minimized over the phase convention
    /// above (not over all phases).
    pub fn phase_residual(&self, other: &Self) -> f64 {
        let k = other.peak_index();
        let yk = other.entries[k];
        if yk.norm() == 0.0 {
            return self.norm();
        }
        let xk = self.entries[k];
        let c = if xk.norm() > 0.0 {
            let ratio = xk / yk;
            ratio / ratio.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        self.sub(&other.scale(c)).norm()
    }
}

impl fmt::Debug for ComplexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, z) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:.4}{:+.4}i", z.re, z.im)?;
        }
        write!(f, "]")
    }
}

/// Dense complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Self {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count {} does not match {rows}x{cols}",
            entries.len()
        );
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Validating constructor: checks shape and finiteness.
    pub fn checked(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: entries.len(),
                context: "matrix entry count",
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFiniteEntry);
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Build from real row slices; handy in tests and demos.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            entries.extend(row.iter().map(|&x| C64::new(x, 0.0)));
        }
        Self::new(r, c, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: C64) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn column(&self, j: usize) -> ComplexVector {
        ComplexVector::new((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn set_column(&mut self, j: usize, v: &ComplexVector) {
        assert_eq!(v.dim(), self.rows);
        for i in 0..self.rows {
            self.set(i, j, v.get(i));
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(
            self.cols, other.rows,
            "matrix product shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &ComplexVector) -> ComplexVector {
        assert_eq!(
            self.cols,
            v.dim(),
            "matrix-vector shape mismatch: {}x{} * {}",
            self.rows,
            self.cols,
            v.dim()
        );
        let mut out = ComplexVector::zeros(self.rows);
        for i in 0..self.rows {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self.get(i, j) * v.get(j);
            }
            out.set(i, acc);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * c).collect(),
        }
    }

    /// Largest entry magnitude (max norm).
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn fro_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// `max |M - M†|`; 0 for Hermitian matrices.
    pub fn hermitian_residual(&self) -> f64 {
        assert!(self.is_square());
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// `max |U†U - I|`; 0 for unitary matrices.
    pub fn unitary_residual(&self) -> f64 {
        let gram = self.dagger().mul(self);
        gram.sub(&Self::identity(gram.rows)).max_abs()
    }

    pub fn check_unitary(&self, eps: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                actual: self.cols,
                context: "unitary matrix must be square",
            });
        }
        let residual = self.unitary_residual();
        if residual > eps {
            return Err(Error::NotUnitary {
                residual,
                tolerance: eps,
            });
        }
        Ok(())
    }

    pub fn check_hermitian(&self, eps: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                actual: self.cols,
                context: "Hermitian matrix must be square",
            });
        }
        let residual = self.hermitian_residual();
        if residual > eps {
            return Err(Error::NotHermitian {
                residual,
                tolerance: eps,
            });
        }
        Ok(())
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product with lexicographic block layout:
/// `(A ⊗ B)[(i·Br + k), (j·Bc + l)] = A[i,j]·B[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let aij = a.get(i, j);
            if aij.norm_sqr() == 0.0 {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    out.set(i * b.rows() + k, j * b.cols() + l, aij * b.get(k, l));
                }
            }
        }
    }
    out
}

/// Kronecker product of vectors: `(x ⊗ y)[i·dim(y) + j] = x[i]·y[j]`.
pub fn kron_vec(x: &ComplexVector, y: &ComplexVector) -> ComplexVector {
    let mut out = ComplexVector::zeros(x.dim() * y.dim());
    for i in 0..x.dim() {
        let xi = x.get(i);
        for j in 0..y.dim() {
            out.set(i * y.dim() + j, xi * y.get(j));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn kron_identity_case() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_z_z_is_diag() {
        let z = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]);
        let zz = kron(&z, &z);
        let expected =
            ComplexMatrix::from_fn(
                4,
                4,
                |i, j| {
                    if i == j {
                        c([1.0, -1.0, -1.0, 1.0][i], 0.0)
                    } else {
                        c(0.0, 0.0)
                    }
                },
            );
        assert_eq!(zz, expected);
    }

    #[test]
    fn kron_vec_lexicographic() {
        let one = ComplexVector::basis(2, 1);
        let out = kron_vec(&one, &one);
        assert_eq!(out, ComplexVector::basis(4, 3));
    }

    #[test]
    fn dagger_involution_and_conjugate_transpose() {
        let i4 = ComplexMatrix::identity(4);
        assert_eq!(i4.dagger(), i4);

        let m = ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let md = m.dagger();
        assert_eq!(md.get(1, 0), c(0.0, -1.0));
        assert_eq!(md.get(0, 1), c(0.0, 0.0));
        assert_eq!(md.dagger(), m);
    }

    #[test]
    fn phase_comparison() {
        let zero = ComplexVector::basis(2, 0);
        let tol = Tolerance::default();
        let rotated = zero.scale(C64::from_polar(1.0, std::f64::consts::PI / 3.0));
        assert!(zero.approx_eq_phase(&rotated, tol).unwrap());

        let one = ComplexVector::basis(2, 1);
        assert!(!zero.approx_eq_phase(&one, tol).unwrap());

        let plus = ComplexVector::from_real(&[1.0, 1.0]).normalized();
        let minus_plus = plus.scale(c(-1.0, 0.0));
        assert!(plus.approx_eq_phase(&minus_plus, tol).unwrap());
    }

    #[test]
    fn phase_comparison_dim_mismatch() {
        let a = ComplexVector::zeros(2);
        let b = ComplexVector::zeros(3);
        assert!(matches!(
            a.approx_eq_phase(&b, Tolerance::default()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn checked_rejects_non_finite() {
        assert!(matches!(
            ComplexVector::checked(vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFiniteEntry)
        ));
        assert!(matches!(
            ComplexMatrix::checked(1, 2, vec![c(1.0, 0.0), c(0.0, f64::INFINITY)]),
            Err(Error::NonFiniteEntry)
        ));
        assert!(matches!(
            ComplexMatrix::checked(2, 2, vec![c(1.0, 0.0)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
