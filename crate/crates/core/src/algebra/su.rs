use std::sync::Arc;

use num_complex::Complex64;

use super::{trace_form, CompactAlgebra};
use crate::numkit::{CMatrix, I};

/// The compact algebra `su(n)` of traceless skew-Hermitian matrices.
///
/// Basis: the `n−1` diagonal generators `i(E_kk − E_{k+1,k+1})`
/// Gram–Schmidt orthonormalized, then for each `j < k` the pair
/// `(E_jk − E_kj)/√2`, `i(E_jk + E_kj)/√2`. The form is `−Re Tr(ab)`, so the
/// basis is orthonormal and the first `n−1` vectors span the diagonal torus.
///
/// Panics if `n < 2`.
pub fn su(n: usize) -> Arc<CompactAlgebra> {
    assert!(n >= 2, "su(n) needs n >= 2");
    let mut basis: Vec<CMatrix> = Vec::with_capacity(n * n - 1);
    for k in 0..n - 1 {
        let mut m = CMatrix::zeros(n, n);
        m[(k, k)] = I;
        m[(k + 1, k + 1)] = -I;
        for b in &basis {
            let proj = trace_form(b, &m);
            m -= b.scale(proj);
        }
        let norm = trace_form(&m, &m).sqrt();
        basis.push(m.unscale(norm));
    }
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for j in 0..n {
        for k in (j + 1)..n {
            let mut u = CMatrix::zeros(n, n);
            u[(j, k)] = Complex64::new(r, 0.0);
            u[(k, j)] = Complex64::new(-r, 0.0);
            let mut v = CMatrix::zeros(n, n);
            v[(j, k)] = Complex64::new(0.0, r);
            v[(k, j)] = Complex64::new(0.0, r);
            basis.push(u);
            basis.push(v);
        }
    }
    CompactAlgebra::from_realization(format!("su({n})"), n - 1, basis)
        .expect("su(n) basis is linearly independent")
}
