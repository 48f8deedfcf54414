use num_complex::Complex64;

use super::{frob, identity, CMatrix};
use crate::error::{Error, Result};

/// Relative Hermiticity defect accepted by callers that do not pass their own.
pub const DEFAULT_HERMITIAN_TOL: f64 = 1e-10;
pub const MAX_JACOBI_SWEEPS: usize = 60;

/// Sweeps stop once the off-diagonal mass is this small relative to `‖H‖_F`.
const OFF_DIAGONAL_STOP: f64 = 1e-16;

/// Eigendecomposition `H = U diag(values) U†`, values descending.
#[derive(Debug, Clone)]
pub struct HermEig {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermEig {
    pub fn reconstruct(&self) -> CMatrix {
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            self.values.len(),
            self.values.iter().map(|&x| Complex64::new(x, 0.0)),
        ));
        &self.vectors * d * self.vectors.adjoint()
    }
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// The input only has to be Hermitian up to `tol` (relative, Frobenius); it is
/// symmetrized before iterating. Equal eigenvalues keep the order in which the
/// sweeps leave them on the diagonal, so diagonal inputs come back with the
/// identity as eigenvector matrix (up to the descending sort).
pub fn herm_eig(h: &CMatrix, tol: f64) -> Result<HermEig> {
    let n = super::require_square(h, "herm_eig")?;
    let scale = frob(h);
    let defect = frob(&(h - h.adjoint()));
    if defect > tol * scale {
        return Err(Error::NotHermitian {
            defect: if scale > 0.0 { defect / scale } else { defect },
        });
    }
    let mut a = (h + h.adjoint()).scale(0.5);
    let mut v = identity(n);

    let mut sweep = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= OFF_DIAGONAL_STOP * scale || off == 0.0 {
            break;
        }
        if sweep == MAX_JACOBI_SWEEPS {
            return Err(Error::NoConvergence {
                iterations: sweep,
                residual: off,
            });
        }
        sweep += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    // stable: equal eigenvalues keep their diagonal order
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&i| diag[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(HermEig { values, vectors })
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation annihilating `a[p][q]`: `a ← G† a G`, `v ← v G` with
/// `G = diag(1, e^{-iφ}) · [[c, s], [-s, c]]` on the `(p, q)` plane.
fn rotate(a: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag;
    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * mag);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let ph = phase.conj();
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = ph * (-s);
    let g_qq = ph * c;

    let n = a.nrows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::unitarity_defect;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMatrix {
        let m = CMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        (&m + m.adjoint()).scale(0.5)
    }

    #[test]
    fn diagonal_input_is_left_alone() {
        let h = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(3.0), c(1.0)]));
        let e = herm_eig(&h, 1e-12).unwrap();
        assert_eq!(e.values, vec![3.0, 1.0]);
        assert_eq!(e.vectors, identity(2));
    }

    #[test]
    fn ascending_diagonal_is_sorted_descending() {
        let h = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(-1.0), c(2.0), c(0.5)]));
        let e = herm_eig(&h, 1e-12).unwrap();
        assert_eq!(e.values, vec![2.0, 0.5, -1.0]);
        assert_eq!(e.vectors[(1, 0)], c(1.0));
    }

    #[test]
    fn pauli_x() {
        let h = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]);
        let e = herm_eig(&h, 1e-12).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-15);
        assert!((e.values[1] + 1.0).abs() < 1e-15);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        // columns equal (1,1)/√2 and (1,-1)/√2 up to a phase
        let u0 = e.vectors.column(0);
        let u1 = e.vectors.column(1);
        let p0 = (u0[0] * c(r) + u0[1] * c(r)).norm();
        let p1 = (u1[0] * c(r) - u1[1] * c(r)).norm();
        assert!((p0 - 1.0).abs() < 1e-14 && (p1 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn random_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=12 {
            for _ in 0..40 {
                let h = random_hermitian(n, &mut rng);
                let e = herm_eig(&h, 1e-12).unwrap();
                let res = frob(&(e.reconstruct() - &h));
                assert!(res <= 1e-12 * frob(&h).max(1.0), "n={n} res={res}");
                assert!(unitarity_defect(&e.vectors) <= 1e-12);
                assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let h = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert!(matches!(herm_eig(&h, 1e-10), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn zero_matrix() {
        let e = herm_eig(&CMatrix::zeros(3, 3), 1e-12).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
    }
}
