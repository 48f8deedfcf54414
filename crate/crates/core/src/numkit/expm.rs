use std::f64::consts::PI;

use num_complex::Complex64;

use super::{frob, herm_eig, identity, require_square, unitarity_defect, CMatrix, RMatrix};
use crate::error::{Error, Result};

/// `‖Z†Z − I‖_F` accepted by [`mlog_principal`].
pub const UNITARY_TOL: f64 = 1e-10;

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

fn one_norm(m: &CMatrix) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring around a [13/13] Padé kernel.
///
/// Panics if `x` is not square.
pub fn mexp(x: &CMatrix) -> CMatrix {
    let n = require_square(x, "mexp").expect("mexp needs a square matrix");
    if n == 0 {
        return x.clone();
    }
    let norm = one_norm(x);
    if norm == 0.0 {
        return identity(n);
    }
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let a = x.scale(0.5f64.powi(s));
    let b = &PADE13;
    let id = identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let u_inner = &a6 * (a6.scale(b[13]) + a4.scale(b[11]) + a2.scale(b[9]))
        + a6.scale(b[7])
        + a4.scale(b[5])
        + a2.scale(b[3])
        + id.scale(b[1]);
    let u = &a * u_inner;
    let v = &a6 * (a6.scale(b[12]) + a4.scale(b[10]) + a2.scale(b[8]))
        + a6.scale(b[6])
        + a4.scale(b[4])
        + a2.scale(b[2])
        + id.scale(b[0]);
    let p = &v + &u;
    let q = &v - &u;
    let mut r = q
        .lu()
        .solve(&p)
        .expect("Padé denominator is nonsingular for scaled arguments");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

/// Exponential of a real matrix, returned real.
pub fn mexp_real(x: &RMatrix) -> RMatrix {
    mexp(&super::to_complex(x)).map(|z| z.re)
}

/// Principal logarithm of a unitary matrix.
///
/// The Cayley transform `K = i(I − Z)(I + Z)⁻¹` is Hermitian with the same
/// eigenvectors as `Z`; an eigenvalue `κ` of `K` corresponds to the phase
/// `2·atan(κ)` of `Z`. Phases must stay inside `(−π + margin, π − margin)`.
pub fn mlog_principal(z: &CMatrix, margin: f64) -> Result<CMatrix> {
    let n = require_square(z, "mlog_principal")?;
    let defect = unitarity_defect(z);
    if defect > UNITARY_TOL {
        return Err(Error::NotUnitary { defect });
    }
    let id = identity(n);
    let plus = &id + z;
    let minus = &id - z;
    let boundary = Error::OutsideInjectivityDomain { phase: PI, margin };
    let k = match plus.lu().solve(&minus) {
        Some(k) if super::is_finite(&k) => k * super::I,
        _ => return Err(boundary),
    };
    let k = (&k + k.adjoint()).scale(0.5);
    let eig = herm_eig(&k, 1.0)?;
    let limit = PI - margin;
    let mut phases = Vec::with_capacity(n);
    for &kappa in &eig.values {
        let phase = 2.0 * kappa.atan();
        if phase.abs() >= limit {
            return Err(Error::OutsideInjectivityDomain { phase, margin });
        }
        phases.push(Complex64::new(0.0, phase));
    }
    let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(phases));
    let u = &eig.vectors;
    let log = u * d * u.adjoint();
    debug_assert!(frob(&log).is_finite());
    Ok(log)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::{skew_defect, I};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_skew(n: usize, scale: f64, rng: &mut ChaCha8Rng) -> CMatrix {
        let m = CMatrix::from_fn(n, n, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let s = (&m - m.adjoint()).scale(0.5);
        let f = frob(&s);
        s.scale(scale / f)
    }

    /// exp through the eigendecomposition of the Hermitian matrix iX.
    fn exp_skew_reference(x: &CMatrix) -> CMatrix {
        let e = herm_eig(&(x * I), 1e-12).unwrap();
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            e.values.len(),
            e.values.iter().map(|&l| Complex64::new(0.0, -l).exp()),
        ));
        &e.vectors * d * e.vectors.adjoint()
    }

    #[test]
    fn exp_of_zero_is_identity() {
        assert_eq!(mexp(&CMatrix::zeros(3, 3)), identity(3));
    }

    #[test]
    fn exp_of_i_pi_diag() {
        let x = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(0.0, PI),
            Complex64::new(0.0, -PI),
        ]));
        let e = mexp(&x);
        assert!(frob(&(e + identity(2))) < 1e-13);
    }

    #[test]
    fn exp_matches_eigen_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=8 {
            for &scale in &[1e-3, 0.3, 1.0, 4.0, 12.0] {
                let x = random_skew(n, scale, &mut rng);
                let e = mexp(&x);
                let r = exp_skew_reference(&x);
                let rel = frob(&(&e - &r)) / frob(&r);
                assert!(rel <= 1e-13 * scale.exp(), "n={n} scale={scale} rel={rel}");
                assert!(unitarity_defect(&e) <= 1e-13 * scale.exp().max(1.0) * 10.0);
            }
        }
    }

    #[test]
    fn exp_inverse_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=6 {
            let x = CMatrix::from_fn(n, n, |_, _| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let x = x.scale(2.0 / frob(&x));
            let p = mexp(&x) * mexp(&(-&x));
            assert!(frob(&(p - identity(n))) < 1e-12);
        }
    }

    #[test]
    fn log_of_identity_is_zero() {
        assert!(frob(&mlog_principal(&identity(4), 1e-6).unwrap()) == 0.0);
    }

    #[test]
    fn log_of_diagonal_phases() {
        let z = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(0.0, 0.3).exp(),
            Complex64::new(0.0, -0.3).exp(),
        ]));
        let l = mlog_principal(&z, 1e-6).unwrap();
        assert!((l[(0, 0)] - Complex64::new(0.0, 0.3)).norm() < 1e-14);
        assert!((l[(1, 1)] - Complex64::new(0.0, -0.3)).norm() < 1e-14);
    }

    #[test]
    fn log_rejects_minus_one() {
        let z = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(-1.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ]));
        assert!(matches!(
            mlog_principal(&z, 1e-6),
            Err(Error::OutsideInjectivityDomain { .. })
        ));
        let w = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(0.0, PI - 1e-3).exp(),
            Complex64::new(0.0, -(PI - 1e-3)).exp(),
        ]));
        assert!(mlog_principal(&w, 1e-2).is_err());
        assert!(mlog_principal(&w, 1e-4).is_ok());
    }

    #[test]
    fn log_rejects_non_unitary() {
        let z = identity(2).scale(1.01);
        assert!(matches!(mlog_principal(&z, 0.1), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn log_exp_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 2..=8 {
            for _ in 0..25 {
                let x = random_skew(n, rng.gen_range(0.01..1.0), &mut rng);
                let z = mexp(&x);
                let l = mlog_principal(&z, 1e-3).unwrap();
                assert!(frob(&(&l - &x)) < 1e-10);
                assert!(frob(&(mexp(&l) - &z)) < 1e-11 * n as f64);
                assert!(skew_defect(&l) < 1e-11);
            }
        }
    }
}
