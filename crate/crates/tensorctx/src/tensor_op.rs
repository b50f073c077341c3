//! Bipartite tensor product operators as first-class values.
//!
//! Every bilinear norm-preserving map `C^d1 × C^d2 -> C^D` of a fixed type
//! is a unitary twist of the canonical Kronecker map, so an operator is
//! stored as that twist: `apply(x, y) = twist · kron(x, y)`. The factor
//! bases are fixed to the standard bases of the factor spaces; changing a
//! factor basis is expressed by composing with [`TensorProductOperator::lift`]
//! of local unitaries. Two operators of one type are related by the unique
//! unitary returned from [`TensorProductOperator::relating_unitary`].

use std::fmt;

use rand::Rng;

use crate::numerics::{kron, kron_vec, ComplexMatrix, ComplexVector, C64, UNITARY_INPUT_EPS};
use crate::rng;
use crate::{Error, Result};

/// The type of a bipartite tensor product operator: factor dimensions and
/// the induced target dimension `D = d1·d2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TensorType {
    pub d1: usize,
    pub d2: usize,
}

impl TensorType {
    pub fn new(d1: usize, d2: usize) -> Self {
        assert!(d1 > 0 && d2 > 0, "factor dimensions must be positive");
        Self { d1, d2 }
    }

    /// Target-space dimension.
    pub fn target_dim(&self) -> usize {
        self.d1 * self.d2
    }

    /// Flat target index of the basis pair `(i, j)`, lexicographic.
    pub fn flat(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.d1 && j < self.d2);
        i * self.d2 + j
    }
}

impl fmt::Display for TensorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} -> {}", self.d1, self.d2, self.target_dim())
    }
}

/// A bipartite tensor product operator, represented by its unitary twist of
/// the canonical Kronecker map on the target space.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorProductOperator {
    ttype: TensorType,
    twist: ComplexMatrix,
    label: String,
}

impl TensorProductOperator {
    /// The canonical operator of a type: identity twist, so `apply`
    /// coincides with the Kronecker product.
    pub fn canonical(d1: usize, d2: usize) -> Self {
        let ttype = TensorType::new(d1, d2);
        Self {
            ttype,
            twist: ComplexMatrix::identity(ttype.target_dim()),
            label: "canonical".into(),
        }
    }

    /// Compose an existing operator with a further unitary on the target
    /// space: the result has twist `U · self.twist`.
    pub fn from_twist(&self, u: &ComplexMatrix) -> Result<Self> {
        let d = self.ttype.target_dim();
        if u.rows() != d || u.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: u.rows(),
                context: "twist dimension",
            });
        }
        u.check_unitary(UNITARY_INPUT_EPS)?;
        Ok(Self {
            ttype: self.ttype,
            twist: u.mul(&self.twist),
            label: String::new(),
        })
    }

    /// Build an operator directly from a unitary twist against the
    /// canonical map.
    pub fn with_twist(d1: usize, d2: usize, twist: ComplexMatrix, label: &str) -> Result<Self> {
        TensorProductOperator::canonical(d1, d2)
            .from_twist(&twist)
            .map(|op| op.labeled(label))
    }

    /// Specify an operator by the images of the lexicographically ordered
    /// basis pairs `(e_i, f_j)`; the images become the twist columns.
    pub fn from_basis_images(
        ttype: TensorType,
        images: &[ComplexVector],
        label: &str,
    ) -> Result<Self> {
        let d = ttype.target_dim();
        if images.len() != d {
            return Err(Error::WrongCount {
                expected: d,
                actual: images.len(),
            });
        }
        let mut twist = ComplexMatrix::zeros(d, d);
        for (j, image) in images.iter().enumerate() {
            if image.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    actual: image.dim(),
                    context: "basis image dimension",
                });
            }
            twist.set_column(j, image);
        }
        // orthonormality of the images = unitarity of the column matrix
        let residual = twist.unitary_residual();
        if residual > UNITARY_INPUT_EPS {
            return Err(Error::NotOrthonormal { residual });
        }
        Ok(Self {
            ttype,
            twist,
            label: label.into(),
        })
    }

    pub fn labeled(mut self, label: &str) -> Self {
        self.label = label.into();
        self
    }

    pub fn ttype(&self) -> TensorType {
        self.ttype
    }

    pub fn twist(&self) -> &ComplexMatrix {
        &self.twist
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn target_dim(&self) -> usize {
        self.ttype.target_dim()
    }

    /// `apply(x, y) = twist · kron(x, y)`; bilinear and norm-preserving.
    pub fn apply(&self, x: &ComplexVector, y: &ComplexVector) -> Result<ComplexVector> {
        if x.dim() != self.ttype.d1 {
            return Err(Error::DimensionMismatch {
                expected: self.ttype.d1,
                actual: x.dim(),
                context: "first factor",
            });
        }
        if y.dim() != self.ttype.d2 {
            return Err(Error::DimensionMismatch {
                expected: self.ttype.d2,
                actual: y.dim(),
                context: "second factor",
            });
        }
        Ok(self.twist.mul_vec(&kron_vec(x, y)))
    }

    /// Image of the basis pair `(e_i, f_j)`: column `i·d2 + j` of the twist.
    pub fn basis_image(&self, i: usize, j: usize) -> ComplexVector {
        self.twist.column(self.ttype.flat(i, j))
    }

    /// Lift local operators to the target space:
    /// `lift(L1, L2) = twist · kron(L1, L2) · twist†`, the unique operator
    /// with `lift(L1, L2) · apply(x, y) = apply(L1·x, L2·y)`.
    pub fn lift(&self, l1: &ComplexMatrix, l2: &ComplexMatrix) -> Result<ComplexMatrix> {
        if l1.rows() != self.ttype.d1 || l1.cols() != self.ttype.d1 {
            return Err(Error::DimensionMismatch {
                expected: self.ttype.d1,
                actual: l1.rows(),
                context: "first local operator",
            });
        }
        if l2.rows() != self.ttype.d2 || l2.cols() != self.ttype.d2 {
            return Err(Error::DimensionMismatch {
                expected: self.ttype.d2,
                actual: l2.rows(),
                context: "second local operator",
            });
        }
        Ok(self.twist.mul(&kron(l1, l2)).mul(&self.twist.dagger()))
    }

    /// The unique unitary `W` with `W · self.apply(x, y) = other.apply(x, y)`
    /// for all `x, y`: `W = other.twist · self.twist†`.
    pub fn relating_unitary(&self, other: &Self) -> Result<ComplexMatrix> {
        if self.ttype != other.ttype {
            return Err(Error::TypeMismatch(
                self.ttype.to_string(),
                other.ttype.to_string(),
            ));
        }
        Ok(other.twist.mul(&self.twist.dagger()))
    }

    /// Randomized check of the defining axioms: bilinearity in each argument
    /// and norm preservation on unit inputs. Deterministic for a given seed.
    pub fn verify_axioms(&self, trials: usize, seed: u64) -> AxiomReport {
        let mut max_bilinearity = 0.0f64;
        let mut max_norm_dev = 0.0f64;
        let (d1, d2) = (self.ttype.d1, self.ttype.d2);
        let mut gen = rng::seeded(seed);
        for _ in 0..trials {
            let x = rng::random_vector(d1, &mut gen);
            let xp = rng::random_vector(d1, &mut gen);
            let y = rng::random_vector(d2, &mut gen);
            let yp = rng::random_vector(d2, &mut gen);
            let a = rng::random_scalar(&mut gen);
            let b = rng::random_scalar(&mut gen);

            // linearity in the first argument
            let lhs = self
                .apply(&x.scale(a).add(&xp.scale(b)), &y)
                .expect("dims fixed");
            let rhs = self
                .apply(&x, &y)
                .expect("dims fixed")
                .scale(a)
                .add(&self.apply(&xp, &y).expect("dims fixed").scale(b));
            max_bilinearity = max_bilinearity.max(lhs.max_diff(&rhs));

            // linearity in the second argument
            let lhs = self
                .apply(&x, &y.scale(a).add(&yp.scale(b)))
                .expect("dims fixed");
            let rhs = self
                .apply(&x, &y)
                .expect("dims fixed")
                .scale(a)
                .add(&self.apply(&x, &yp).expect("dims fixed").scale(b));
            max_bilinearity = max_bilinearity.max(lhs.max_diff(&rhs));

            // norm preservation on unit inputs
            let ux = x.normalized();
            let uy = y.normalized();
            let image = self.apply(&ux, &uy).expect("dims fixed");
            max_norm_dev = max_norm_dev.max((image.norm() - 1.0).abs());
        }
        AxiomReport {
            trials,
            max_bilinearity_residual: max_bilinearity,
            max_norm_residual: max_norm_dev,
        }
    }

    /// A random same-type operator (random unitary twist); used by the
    /// property sweeps.
    pub fn random_of_type(ttype: TensorType, gen: &mut impl Rng) -> Self {
        let twist = rng::random_unitary(ttype.target_dim(), gen);
        Self {
            ttype,
            twist,
            label: String::new(),
        }
    }
}

/// Outcome of [`TensorProductOperator::verify_axioms`].
#[derive(Debug, Clone, Copy)]
pub struct AxiomReport {
    pub trials: usize,
    pub max_bilinearity_residual: f64,
    pub max_norm_residual: f64,
}

impl AxiomReport {
    pub fn max_residual(&self) -> f64 {
        self.max_bilinearity_residual.max(self.max_norm_residual)
    }

    pub fn passed(&self, eps: f64) -> bool {
        self.max_residual() <= eps
    }
}

/// The standard 2x2 gate matrices used by the scenarios and tests.
pub mod gates {
    use super::*;

    pub fn identity(n: usize) -> ComplexMatrix {
        ComplexMatrix::identity(n)
    }

    pub fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    pub fn pauli_z() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
    }

    pub fn hadamard() -> ComplexMatrix {
        let h = 1.0 / 2f64.sqrt();
        ComplexMatrix::from_real_rows(&[&[h, h], &[h, -h]])
    }

    /// Controlled-not in the lexicographic product basis (control first).
    pub fn cx() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ])
    }

    /// The standard two-qubit swap in the lexicographic product basis.
    pub fn swap() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ])
    }

    /// `|0⟩`, `|1⟩`, `|+⟩`, `|-⟩`.
    pub fn ket0() -> ComplexVector {
        ComplexVector::basis(2, 0)
    }

    pub fn ket1() -> ComplexVector {
        ComplexVector::basis(2, 1)
    }

    pub fn ket_plus() -> ComplexVector {
        ComplexVector::from_real(&[1.0, 1.0]).normalized()
    }

    pub fn ket_minus() -> ComplexVector {
        ComplexVector::from_real(&[1.0, -1.0]).normalized()
    }

    /// Bell coefficient vector `|β_xy⟩` in the lexicographic basis of C⁴.
    pub fn bell(x: usize, y: usize) -> ComplexVector {
        let s = 1.0 / 2f64.sqrt();
        let sign = if x == 0 { s } else { -s };
        let mut v = ComplexVector::zeros(4);
        v.set(y, C64::new(s, 0.0));
        v.set(2 + (1 - y), C64::new(sign, 0.0));
        v
    }

    /// The Bell-derived twist: columns are the images
    /// `(β₁₀, β₁₁, -β₀₁, -β₀₀)`. A real symmetric involution, so also a
    /// Hermitian observable with eigenvalues ±1 of multiplicity 2.
    pub fn bell_twist() -> ComplexMatrix {
        let s = 1.0 / 2f64.sqrt();
        ComplexMatrix::from_real_rows(&[
            &[s, 0.0, 0.0, -s],
            &[0.0, s, -s, 0.0],
            &[0.0, -s, -s, 0.0],
            &[-s, 0.0, 0.0, -s],
        ])
    }
}
