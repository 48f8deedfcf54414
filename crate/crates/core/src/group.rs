//! Elements of `SU(n)` as unitary matrices of unit determinant.

use num_complex::Complex64;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::numkit::{self, mexp, CMatrix};

/// Unitarity and determinant tolerance for [`GroupElement::new`].
pub const GROUP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    matrix: CMatrix,
}

impl GroupElement {
    /// Wrap a matrix after checking `‖U†U − I‖_F ≤ 1e−10` and `|det U − 1| ≤ 1e−10`.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        numkit::require_square(&matrix, "group element")?;
        let defect = numkit::unitarity_defect(&matrix);
        if defect > GROUP_TOL {
            return Err(Error::NotUnitary { defect });
        }
        let det_defect = (numkit::det(&matrix) - Complex64::new(1.0, 0.0)).norm();
        if det_defect > GROUP_TOL {
            return Err(Error::NotUnitary { defect: det_defect });
        }
        Ok(GroupElement { matrix })
    }

    /// Divide a unitary matrix by the principal `n`-th root of its determinant.
    pub fn from_unitary(matrix: CMatrix) -> Result<Self> {
        let n = numkit::require_square(&matrix, "group element")?;
        let det = numkit::det(&matrix);
        let root = Complex64::from_polar(det.norm().powf(1.0 / n as f64), det.arg() / n as f64);
        Self::new(matrix.map(|z| z / root))
    }

    pub fn identity(n: usize) -> Self {
        GroupElement {
            matrix: numkit::identity(n),
        }
    }

    /// `exp(x)` of a realized algebra element.
    pub fn exp(x: &AlgebraElement) -> Result<Self> {
        Self::new(mexp(&x.to_matrix()?))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.nrows()
    }

    /// Inverse, i.e. the adjoint.
    pub fn inverse(&self) -> Self {
        GroupElement {
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        GroupElement {
            matrix: &self.matrix * &other.matrix,
        }
    }

    /// `Ad_g x = g x g⁻¹`.
    pub fn ad(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        let m = &self.matrix * x.to_matrix()? * self.matrix.adjoint();
        AlgebraElement::from_matrix(x.algebra(), &m)
    }

    /// `‖g − I‖_F`.
    pub fn distance_to_identity(&self) -> f64 {
        numkit::frob(&(&self.matrix - numkit::identity(self.n())))
    }
}

/// `XYX⁻¹Y⁻¹`.
pub fn group_commutator(x: &GroupElement, y: &GroupElement) -> GroupElement {
    x.mul(y).mul(&x.inverse()).mul(&y.inverse())
}
