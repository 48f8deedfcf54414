//! Dense complex linear algebra and the matrix functions the solvers are
//! built on: a cyclic Jacobi Hermitian eigensolver, the Padé matrix
//! exponential, the principal logarithm of unitary matrices and a
//! minimum-norm least-squares solve.
//!
//! Matrices are plain `nalgebra` dynamic matrices; the functions here add the
//! numerical contracts (tolerances, finiteness, error reporting) on top.

mod eig;
mod expm;
mod lstsq;

pub use eig::{herm_eig, HermEig, DEFAULT_HERMITIAN_TOL, MAX_JACOBI_SWEEPS};
pub use expm::{mexp, mexp_real, mlog_principal, UNITARY_TOL};
pub use lstsq::{lstsq_min_norm, LstsqSolution};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type RMatrix = DMatrix<f64>;
pub type RVector = DVector<f64>;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Frobenius norm, sqrt of the sum of squared moduli.
pub fn frob(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn dagger(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

/// `ab - ba`.
pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn is_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// `‖m†m − I‖_F`.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    frob(&(m.adjoint() * m - identity(m.nrows())))
}

/// `‖m + m†‖_F`.
pub fn skew_defect(m: &CMatrix) -> f64 {
    frob(&(m + m.adjoint()))
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

pub fn det(m: &CMatrix) -> Complex64 {
    m.clone().lu().determinant()
}

/// General inverse through LU; `None` when singular.
pub fn inverse(m: &CMatrix) -> Option<CMatrix> {
    m.clone().try_inverse()
}

pub fn to_complex(m: &RMatrix) -> CMatrix {
    m.map(|x| Complex64::new(x, 0.0))
}

/// Embed real entries as complex ones after checking the matrix is square.
pub(crate) fn require_square(m: &CMatrix, what: &str) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "{what}: expected square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(m.nrows())
}

/// Spectral norm of a real matrix (largest singular value).
pub fn spectral_norm(m: &RMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().max()
}
