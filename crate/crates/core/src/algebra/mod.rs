//! Compact semisimple Lie algebras presented by structure constants over a
//! fixed real basis, together with an invariant positive-definite form and,
//! when available, a matrix realization of every basis vector.

mod element;
mod su;

pub use element::AlgebraElement;
pub use su::su;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numkit::{self, mexp_real, CMatrix, RMatrix, RVector};

/// Residuals of the defining identities, maximised over basis triples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityResiduals {
    pub antisymmetry: f64,
    pub jacobi: f64,
    pub invariance: f64,
    /// Smallest eigenvalue of the Gram matrix.
    pub min_gram_eigenvalue: f64,
}

#[derive(Debug)]
pub struct CompactAlgebra {
    label: String,
    dim: usize,
    rank: usize,
    /// `c[(i·dim + j)·dim + k]` is the `e_k` coordinate of `[e_i, e_j]`.
    constants: Vec<f64>,
    gram: RMatrix,
    gram_inv: RMatrix,
    realization: Option<Vec<CMatrix>>,
}

impl CompactAlgebra {
    /// Assemble an algebra from structure constants and a Gram matrix.
    ///
    /// Only antisymmetry and positive definiteness are checked here; the Jacobi
    /// and invariance identities cost `O(dim⁵)` and are left to
    /// [`CompactAlgebra::identity_residuals`].
    pub fn from_structure_constants(
        label: impl Into<String>,
        rank: usize,
        constants: Vec<f64>,
        gram: RMatrix,
        realization: Option<Vec<CMatrix>>,
    ) -> Result<Arc<Self>> {
        let dim = gram.nrows();
        if gram.ncols() != dim || constants.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "structure constants of length {} do not fit a {}x{} Gram matrix",
                constants.len(),
                gram.nrows(),
                gram.ncols()
            )));
        }
        if let Some(r) = &realization {
            if r.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "realization has {} matrices for dimension {dim}",
                    r.len()
                )));
            }
        }
        let gram = (&gram + gram.transpose()).scale(0.5);
        let gram_inv = gram
            .clone()
            .cholesky()
            .ok_or_else(|| Error::InvalidPresentation("invariant form is not positive definite".into()))?
            .inverse();
        let alg = CompactAlgebra {
            label: label.into(),
            dim,
            rank,
            constants,
            gram,
            gram_inv,
            realization,
        };
        let mut worst = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    worst = worst.max((alg.c(i, j, k) + alg.c(j, i, k)).abs());
                }
            }
        }
        if worst > 1e-10 {
            return Err(Error::InvalidPresentation(format!(
                "bracket is not antisymmetric (defect {worst:.3e})"
            )));
        }
        Ok(Arc::new(alg))
    }

    /// Build the structure constants from a list of matrices spanning a Lie
    /// algebra of skew-Hermitian matrices; the form is `−Re Tr(ab)`.
    pub fn from_realization(label: impl Into<String>, rank: usize, basis: Vec<CMatrix>) -> Result<Arc<Self>> {
        let dim = basis.len();
        let gram = RMatrix::from_fn(dim, dim, |i, j| trace_form(&basis[i], &basis[j]));
        let gram_inv = gram
            .clone()
            .cholesky()
            .ok_or_else(|| Error::InvalidPresentation("basis matrices are linearly dependent".into()))?
            .inverse();
        let mut constants = vec![0.0; dim * dim * dim];
        for i in 0..dim {
            for j in (i + 1)..dim {
                let br = numkit::commutator(&basis[i], &basis[j]);
                let rhs = RVector::from_iterator(dim, basis.iter().map(|b| trace_form(b, &br)));
                let coords = &gram_inv * rhs;
                for k in 0..dim {
                    constants[(i * dim + j) * dim + k] = coords[k];
                    constants[(j * dim + i) * dim + k] = -coords[k];
                }
            }
        }
        Self::from_structure_constants(label, rank, constants, gram, Some(basis))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &RMatrix {
        &self.gram
    }

    pub fn realization(&self) -> Option<&[CMatrix]> {
        self.realization.as_deref()
    }

    /// Size of the realizing matrices, if any.
    pub fn matrix_size(&self) -> Option<usize> {
        self.realization.as_ref().and_then(|r| r.first()).map(|m| m.nrows())
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub(crate) fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || (a.label == b.label && a.dim == b.dim && a.constants == b.constants)
    }

    fn bracket_coords(&self, a: &RVector, b: &RVector) -> RVector {
        let d = self.dim;
        let mut out = RVector::zeros(d);
        for i in 0..d {
            let ai = a[i];
            if ai == 0.0 {
                continue;
            }
            for j in 0..d {
                let w = ai * b[j];
                if w == 0.0 || i == j {
                    continue;
                }
                let base = (i * d + j) * d;
                for k in 0..d {
                    out[k] += w * self.constants[base + k];
                }
            }
        }
        out
    }

    /// Matrix of `ad_x` in the basis: column `j` holds the coordinates of `[x, e_j]`.
    pub fn ad_coords(&self, x: &RVector) -> RMatrix {
        let d = self.dim;
        let mut m = RMatrix::zeros(d, d);
        for i in 0..d {
            let xi = x[i];
            if xi == 0.0 {
                continue;
            }
            for j in 0..d {
                let base = (i * d + j) * d;
                for k in 0..d {
                    m[(k, j)] += xi * self.constants[base + k];
                }
            }
        }
        m
    }

    /// Coordinates of a vector given its inner products with the basis.
    pub(crate) fn coords_from_pairings(&self, pairings: RVector) -> RVector {
        &self.gram_inv * pairings
    }

    /// Killing form `Tr(ad_{e_i} ad_{e_j})` on the basis.
    pub fn killing_gram(&self) -> RMatrix {
        let d = self.dim;
        let ads: Vec<RMatrix> = (0..d)
            .map(|i| {
                let mut e = RVector::zeros(d);
                e[i] = 1.0;
                self.ad_coords(&e)
            })
            .collect();
        RMatrix::from_fn(d, d, |i, j| (&ads[i] * &ads[j]).trace())
    }

    /// `max_{i,j} ‖[e_i, e_j]‖`, the constant in `‖[x,y]‖ ≤ C‖x‖‖y‖` for an
    /// orthonormal basis.
    pub fn bracket_bound(&self) -> f64 {
        let d = self.dim;
        let mut best = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let v = RVector::from_iterator(d, (0..d).map(|k| self.c(i, j, k)));
                best = best.max(v.dot(&(&self.gram * &v)).sqrt());
            }
        }
        best
    }

    /// Exhaustive check of antisymmetry, Jacobi and invariance over basis
    /// triples, plus the smallest Gram eigenvalue.
    pub fn identity_residuals(&self) -> IdentityResiduals {
        let d = self.dim;
        let mut antisymmetry = 0.0f64;
        let mut jacobi = 0.0f64;
        let mut invariance = 0.0f64;
        // [e_i, e_j] as dense coordinate vectors, reused everywhere below
        let br: Vec<RVector> = (0..d * d)
            .map(|ij| RVector::from_iterator(d, (0..d).map(|k| self.constants[ij * d + k])))
            .collect();
        let gbr: Vec<RVector> = br.iter().map(|v| &self.gram * v).collect();
        for i in 0..d {
            for j in 0..d {
                antisymmetry = antisymmetry.max((&br[i * d + j] + &br[j * d + i]).amax());
            }
        }
        let bracket_with = |v: &RVector, k: usize| -> RVector {
            let mut out = RVector::zeros(d);
            for (l, &vl) in v.iter().enumerate() {
                if vl != 0.0 {
                    out.axpy(vl, &br[l * d + k], 1.0);
                }
            }
            out
        };
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    let s = bracket_with(&br[i * d + j], k)
                        + bracket_with(&br[j * d + k], i)
                        + bracket_with(&br[k * d + i], j);
                    jacobi = jacobi.max(s.amax());
                }
            }
        }
        // <[a,b],c> + <b,[a,c]> with a=e_i, b=e_j, c=e_k
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let lhs = gbr[i * d + j][k] + gbr[i * d + k][j];
                    invariance = invariance.max(lhs.abs());
                }
            }
        }
        let min_gram_eigenvalue = self.gram.clone().symmetric_eigenvalues().min();
        IdentityResiduals {
            antisymmetry,
            jacobi,
            invariance,
            min_gram_eigenvalue,
        }
    }

    /// Apply `exp(ad_y)` to coordinates.
    pub(crate) fn exp_ad_coords(&self, y: &RVector, x: &RVector) -> RVector {
        mexp_real(&self.ad_coords(y)) * x
    }
}

/// `−Re Tr(ab)`, the invariant form used on realized matrices.
pub fn trace_form(a: &CMatrix, b: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for k in 0..n {
            s += (a[(i, k)] * b[(k, i)]).re;
        }
    }
    -s
}

/// `[a, b]`.
pub fn bracket(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    a.check_same(b)?;
    let alg = a.algebra();
    Ok(AlgebraElement::new(alg.clone(), alg.bracket_coords(a.coords(), b.coords())))
}

/// Invariant inner product `⟨a, b⟩`.
pub fn inner(a: &AlgebraElement, b: &AlgebraElement) -> Result<f64> {
    a.check_same(b)?;
    Ok(a.coords().dot(&(a.algebra().gram() * b.coords())))
}

/// Real `dim × dim` matrix of `ad_x`; column `j` holds `[x, e_j]`.
pub fn ad_matrix(x: &AlgebraElement) -> RMatrix {
    x.algebra().ad_coords(x.coords())
}

/// `exp(ad_y) x`, i.e. `Ad_{exp y} x`.
pub fn exp_ad(y: &AlgebraElement, x: &AlgebraElement) -> Result<AlgebraElement> {
    y.check_same(x)?;
    let alg = y.algebra();
    Ok(AlgebraElement::new(alg.clone(), alg.exp_ad_coords(y.coords(), x.coords())))
}
