use super::{RMatrix, RVector};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct LstsqSolution {
    pub x: RVector,
    /// `‖J x − r‖₂`.
    pub residual: f64,
    /// Number of singular values kept.
    pub rank: usize,
}

/// Minimum-norm least-squares solution of `J x ≈ r`; singular values below
/// `rcond · σ_max` are treated as zero.
pub fn lstsq_min_norm(j: &RMatrix, r: &RVector, rcond: f64) -> Result<LstsqSolution> {
    if j.nrows() != r.len() {
        return Err(Error::DimensionMismatch(format!(
            "lstsq: matrix has {} rows, right-hand side has {} entries",
            j.nrows(),
            r.len()
        )));
    }
    let cols = j.ncols();
    if j.nrows() == 0 || cols == 0 {
        return Ok(LstsqSolution {
            x: RVector::zeros(cols),
            residual: r.norm(),
            rank: 0,
        });
    }
    let svd = j.clone().svd(true, true);
    let sigma_max = svd.singular_values.max();
    if sigma_max == 0.0 {
        return Ok(LstsqSolution {
            x: RVector::zeros(cols),
            residual: r.norm(),
            rank: 0,
        });
    }
    let cutoff = rcond * sigma_max;
    let u = svd.u.as_ref().expect("left singular vectors requested");
    let vt = svd.v_t.as_ref().expect("right singular vectors requested");
    let mut x = RVector::zeros(cols);
    let mut rank = 0;
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s <= cutoff {
            continue;
        }
        rank += 1;
        let coef = u.column(k).dot(r) / s;
        x += vt.row(k).transpose() * coef;
    }
    let residual = (j * &x - r).norm();
    Ok(LstsqSolution { x, residual, rank })
}
