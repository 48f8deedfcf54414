use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::numkit::{self, CMatrix, I};

/// Unitarity tolerance of a [`UnitaryFrame`].
pub const FRAME_TOL: f64 = 1e-12;

/// An orthonormal basis `u_1, …, u_n` of `ℂⁿ`, stored as the columns of a
/// unitary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryFrame {
    columns: CMatrix,
}

impl UnitaryFrame {
    pub fn new(columns: CMatrix) -> Result<Self> {
        numkit::require_square(&columns, "frame")?;
        let defect = numkit::unitarity_defect(&columns);
        if defect > FRAME_TOL {
            return Err(Error::NotUnitary { defect });
        }
        Ok(UnitaryFrame { columns })
    }

    pub fn standard(n: usize) -> Self {
        UnitaryFrame {
            columns: numkit::identity(n),
        }
    }

    /// Haar-distributed frame: QR of a complex Gaussian matrix with the
    /// phases of `R`'s diagonal moved into `Q`.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let g = CMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
        });
        let qr = g.qr();
        let (mut q, r) = qr.unpack();
        for j in 0..n {
            let d = r[(j, j)];
            let ph = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
            for i in 0..n {
                q[(i, j)] *= ph;
            }
        }
        // re-orthonormalise to push the defect well below FRAME_TOL
        Self::new(gram_schmidt_columns(&q)).expect("QR factor is unitary")
    }

    pub fn n(&self) -> usize {
        self.columns.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.columns
    }

    pub fn column(&self, i: usize) -> nalgebra::DVectorView<'_, Complex64> {
        self.columns.column(i)
    }

    /// `|u_i · v_h|` for all `i, h`.
    pub fn overlap_moduli(&self, other: &UnitaryFrame) -> Vec<Vec<f64>> {
        let g = self.columns.adjoint() * &other.columns;
        (0..self.n()).map(|i| (0..self.n()).map(|h| g[(i, h)].norm()).collect()).collect()
    }
}

fn gram_schmidt_columns(m: &CMatrix) -> CMatrix {
    let n = m.ncols();
    let mut out = m.clone();
    for j in 0..n {
        for _ in 0..2 {
            for k in 0..j {
                let proj: Complex64 = out.column(k).dotc(&out.column(j));
                let ck = out.column(k).into_owned();
                let mut cj = out.column_mut(j);
                cj -= ck * proj;
            }
        }
        let norm = out.column(j).norm();
        out.column_mut(j).unscale_mut(norm);
    }
    out
}

/// `v_j = n^{-1/2} Σ_l ζ^{(l−1)j} u_l`, `ζ = e^{2πi/n}`, `j = 1..n`.
pub fn fourier_frame(u: &UnitaryFrame) -> UnitaryFrame {
    let n = u.n();
    let scale = 1.0 / (n as f64).sqrt();
    let coeff = CMatrix::from_fn(n, n, |l, j| {
        let k = ((l * (j + 1)) % n) as f64;
        Complex64::from_polar(scale, 2.0 * PI * k / n as f64)
    });
    UnitaryFrame {
        columns: &u.columns * coeff,
    }
}

/// `U_ij` of the frame: `i·u_i u_i† − i·u_j u_j†` (zero-based indices).
pub fn frame_generator(u: &UnitaryFrame, i: usize, j: usize) -> CMatrix {
    let ui = u.column(i);
    let uj = u.column(j);
    (ui * ui.adjoint() - uj * uj.adjoint()) * I
}

/// `|u_i·v_k|² + |u_j·v_h|² − |u_i·v_h|² − |u_j·v_k|²`, which equals
/// `Re Tr(U_ij V_hk)`. Indices are zero-based.
pub fn trace_pairing_formula(
    u: &UnitaryFrame,
    v: &UnitaryFrame,
    i: usize,
    j: usize,
    h: usize,
    k: usize,
) -> Result<f64> {
    let n = u.n();
    if v.n() != n {
        return Err(Error::DimensionMismatch(format!("frames of size {n} and {}", v.n())));
    }
    if [i, j, h, k].iter().any(|&x| x >= n) {
        return Err(Error::IndexOutOfRange(format!("({i},{j},{h},{k}) with n = {n}")));
    }
    if i == j || h == k {
        return Err(Error::IndexOutOfRange(format!(
            "pairs must be distinct, got ({i},{j}) and ({h},{k})"
        )));
    }
    let m = |a: usize, b: usize| u.column(a).dotc(&v.column(b)).norm_sqr();
    Ok(m(i, k) + m(j, h) - m(i, h) - m(j, k))
}

/// Whether every `|u_i·v_h|` is within `tol` of `1/√n`.
pub fn is_unbiased_pair(u: &UnitaryFrame, v: &UnitaryFrame, tol: f64) -> bool {
    if u.n() != v.n() {
        return false;
    }
    unbiasedness_defect(u, v) <= tol
}

/// `max_{i,h} ||u_i·v_h| − 1/√n|`.
pub fn unbiasedness_defect(u: &UnitaryFrame, v: &UnitaryFrame) -> f64 {
    let target = 1.0 / (u.n() as f64).sqrt();
    u.overlap_moduli(v)
        .iter()
        .flatten()
        .map(|m| (m - target).abs())
        .fold(0.0, f64::max)
}
