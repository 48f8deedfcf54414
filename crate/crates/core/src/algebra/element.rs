use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;
use rand_distr::StandardNormal;

use super::{trace_form, CompactAlgebra};
use crate::error::{Error, Result};
use crate::numkit::{CMatrix, RVector};

/// An element of a [`CompactAlgebra`], stored by its basis coordinates.
#[derive(Clone)]
pub struct AlgebraElement {
    algebra: Arc<CompactAlgebra>,
    coords: RVector,
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraElement")
            .field("algebra", &self.algebra.label())
            .field("coords", &self.coords.as_slice())
            .finish()
    }
}

impl AlgebraElement {
    pub fn new(algebra: Arc<CompactAlgebra>, coords: RVector) -> Self {
        assert_eq!(coords.len(), algebra.dim(), "coordinate length must equal the algebra dimension");
        AlgebraElement { algebra, coords }
    }

    pub fn zero(algebra: &Arc<CompactAlgebra>) -> Self {
        Self::new(algebra.clone(), RVector::zeros(algebra.dim()))
    }

    pub fn basis(algebra: &Arc<CompactAlgebra>, i: usize) -> Self {
        let mut v = RVector::zeros(algebra.dim());
        v[i] = 1.0;
        Self::new(algebra.clone(), v)
    }

    /// Project a matrix onto the realized algebra through the invariant form.
    /// Components outside the algebra (trace, Hermitian part) are dropped.
    pub fn from_matrix(algebra: &Arc<CompactAlgebra>, m: &CMatrix) -> Result<Self> {
        let basis = algebra.realization().ok_or(Error::NoRealization)?;
        if m.nrows() != basis[0].nrows() || m.ncols() != basis[0].ncols() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, realization is {}x{}",
                m.nrows(),
                m.ncols(),
                basis[0].nrows(),
                basis[0].ncols()
            )));
        }
        let pairings = RVector::from_iterator(basis.len(), basis.iter().map(|b| trace_form(b, m)));
        Ok(Self::new(algebra.clone(), algebra.coords_from_pairings(pairings)))
    }

    /// Gaussian direction normalised to `‖·‖ = norm`.
    pub fn random<R: Rng + ?Sized>(algebra: &Arc<CompactAlgebra>, norm: f64, rng: &mut R) -> Self {
        loop {
            let v = RVector::from_iterator(algebra.dim(), (0..algebra.dim()).map(|_| rng.sample::<f64, _>(StandardNormal)));
            let e = Self::new(algebra.clone(), v);
            let n = e.norm();
            if n > 1e-8 {
                return e * (norm / n);
            }
        }
    }

    pub fn algebra(&self) -> &Arc<CompactAlgebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &RVector {
        &self.coords
    }

    pub fn into_coords(self) -> RVector {
        self.coords
    }

    /// Realized matrix `Σ cᵢ Bᵢ`.
    pub fn to_matrix(&self) -> Result<CMatrix> {
        let basis = self.algebra.realization().ok_or(Error::NoRealization)?;
        let n = basis[0].nrows();
        let mut m = CMatrix::zeros(n, n);
        for (c, b) in self.coords.iter().zip(basis) {
            if *c != 0.0 {
                m += b.scale(*c);
            }
        }
        Ok(m)
    }

    /// `sqrt⟨x, x⟩`.
    pub fn norm(&self) -> f64 {
        self.coords.dot(&(self.algebra.gram() * &self.coords)).max(0.0).sqrt()
    }

    pub(crate) fn check_same(&self, other: &Self) -> Result<()> {
        if CompactAlgebra::same(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        CompactAlgebra::same(&self.algebra, &other.algebra) && self.coords == other.coords
    }
}

// Arithmetic between elements of different algebras is a programming error.
macro_rules! binop {
    ($tr:ident, $f:ident, $op:tt) => {
        impl $tr<&AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;
            fn $f(self, rhs: &AlgebraElement) -> AlgebraElement {
                self.check_same(rhs).expect("arithmetic on elements of different algebras");
                AlgebraElement::new(self.algebra.clone(), &self.coords $op &rhs.coords)
            }
        }
        impl $tr<AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $f(self, rhs: AlgebraElement) -> AlgebraElement {
                &self $op &rhs
            }
        }
        impl $tr<&AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $f(self, rhs: &AlgebraElement) -> AlgebraElement {
                &self $op rhs
            }
        }
        impl $tr<AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;
            fn $f(self, rhs: AlgebraElement) -> AlgebraElement {
                self $op &rhs
            }
        }
    };
}
binop!(Add, add, +);
binop!(Sub, sub, -);

impl Mul<f64> for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, s: f64) -> AlgebraElement {
        AlgebraElement::new(self.algebra.clone(), &self.coords * s)
    }
}

impl Mul<f64> for AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, s: f64) -> AlgebraElement {
        &self * s
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self * -1.0
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        &self * -1.0
    }
}
