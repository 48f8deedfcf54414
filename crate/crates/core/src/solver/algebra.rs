//! Small-commutator decomposition in `su(n)`: a target `z` near zero is
//! written as `[x, y]` with `‖x‖, ‖y‖ = O(√‖z‖)`.

use std::sync::Arc;

use nalgebra::DVector;
use num_complex::Complex64;

use crate::algebra::{bracket, AlgebraElement, CompactAlgebra};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::numkit::{herm_eig, CMatrix, DEFAULT_HERMITIAN_TOL, I};
use crate::rootsys::{conjugate_into_torus, fourier_frame, frame_torus, require_su, TorusBasis, UnitaryFrame};

/// Smallest admissible eigenvalue gap of a regular element.
pub const MIN_GAP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraConfig {
    /// Largest admissible `‖z‖`.
    pub z_max: f64,
    /// Required bound on `‖[x', y'] − z‖`.
    pub tol: f64,
    /// Relative tolerance for the torus component in [`invert_ad_on_complement`].
    pub complement_tol: f64,
    /// Override of the scale `r = √‖z‖`.
    pub scale: Option<f64>,
    /// For `z = 0`, return a regular element and `y = 0` instead of `(0, 0)`.
    pub regular_at_zero: bool,
}

impl Default for AlgebraConfig {
    fn default() -> Self {
        AlgebraConfig {
            z_max: 0.5,
            tol: 1e-9,
            complement_tol: 1e-8,
            scale: None,
            regular_at_zero: false,
        }
    }
}

/// Output of [`decompose_algebra`] together with the intermediate objects.
#[derive(Debug, Clone)]
pub struct AlgebraDecomposition {
    pub target: AlgebraElement,
    pub x: AlgebraElement,
    pub y: AlgebraElement,
    /// `g` with `x = Ad_g x₀`, `y = Ad_g y₀`.
    pub conjugator: GroupElement,
    /// Regular element `x₀`, diagonal in the standard frame.
    pub regular_element: AlgebraElement,
    /// `y₀` with `[x₀, y₀] = Ad_{g⁻¹} z`.
    pub inner_y: AlgebraElement,
    /// `Ad_{g⁻¹} z`, lying in the Fourier torus.
    pub conjugated_target: AlgebraElement,
    /// Centralizer of `x₀`: the diagonal torus.
    pub torus: TorusBasis,
    pub scale: f64,
    /// Minimal eigenvalue gap of `x₀`.
    pub gap: f64,
    pub residual: f64,
    pub norm_x: f64,
    pub norm_y: f64,
}

impl AlgebraDecomposition {
    /// `max(‖x‖, ‖y‖) / √‖z‖`, or 0 for `z = 0`.
    pub fn witness_ratio(&self) -> f64 {
        let t = self.target.norm();
        if t == 0.0 {
            0.0
        } else {
            self.norm_x.max(self.norm_y) / t.sqrt()
        }
    }
}

fn matrix_size(algebra: &Arc<CompactAlgebra>) -> Result<usize> {
    let n = algebra.matrix_size().ok_or(Error::NoRealization)?;
    require_su(algebra, n)?;
    Ok(n)
}

/// `c` such that the regular element of [`regular_element`] at scale `r` is
/// `i·c·diag(d)`; this is also its smallest eigenvalue gap.
pub fn regular_gap(n: usize, r: f64) -> f64 {
    let centre = (n as f64 + 1.0) / 2.0;
    let s: f64 = (1..=n).map(|k| (k as f64 - centre).powi(2)).sum();
    r / s.sqrt()
}

/// `x = i·c·diag(d₁, …, d_n)` with `d_k = k − (n+1)/2` and `‖x‖ = r`.
pub fn regular_element(algebra: &Arc<CompactAlgebra>, r: f64) -> Result<AlgebraElement> {
    let n = matrix_size(algebra)?;
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::NotApplicable(format!("scale must be positive, got {r}")));
    }
    let c = regular_gap(n, r);
    let centre = (n as f64 + 1.0) / 2.0;
    let d = DVector::from_iterator(n, (1..=n).map(|k| Complex64::new(0.0, c * (k as f64 - centre))));
    AlgebraElement::from_matrix(algebra, &CMatrix::from_diagonal(&d))
}

/// Solve `[x, y] = w` for `y` in the orthogonal complement of the centralizer
/// of the regular element `x`.
pub fn invert_ad_on_complement(x: &AlgebraElement, w: &AlgebraElement, tol: f64) -> Result<AlgebraElement> {
    x.check_same(w)?;
    let algebra = x.algebra();
    let eig = herm_eig(&(x.to_matrix()? * I), DEFAULT_HERMITIAN_TOL)?;
    let d = &eig.values;
    let n = d.len();
    let mut gap = f64::INFINITY;
    for j in 0..n {
        for k in j + 1..n {
            gap = gap.min((d[j] - d[k]).abs());
        }
    }
    if n > 1 && gap < MIN_GAP {
        return Err(Error::NotRegular { gap });
    }
    let wv = &eig.vectors;
    let wt = wv.adjoint() * w.to_matrix()? * wv;
    let torus_part = (0..n).map(|j| wt[(j, j)].norm_sqr()).sum::<f64>().sqrt();
    if torus_part > tol * w.norm() {
        return Err(Error::NotInComplement { torus_part });
    }
    // in the eigenframe x = −i·diag(d), so [x, y]_jk = −i(d_j − d_k) y_jk
    let yt = CMatrix::from_fn(n, n, |j, k| {
        if j == k {
            Complex64::new(0.0, 0.0)
        } else {
            I * wt[(j, k)] / (d[j] - d[k])
        }
    });
    AlgebraElement::from_matrix(algebra, &(wv * yt * wv.adjoint()))
}

/// Decompose `z` as a commutator `[x', y']` with `‖x'‖ = √‖z‖`.
pub fn decompose_algebra(
    algebra: &Arc<CompactAlgebra>,
    z: &AlgebraElement,
    config: &AlgebraConfig,
) -> Result<AlgebraDecomposition> {
    let n = matrix_size(algebra)?;
    if !CompactAlgebra::same(algebra, z.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let eps = z.norm();
    if eps.is_nan() || eps > config.z_max {
        return Err(Error::TargetTooLarge {
            norm: eps,
            limit: config.z_max,
        });
    }
    let standard = UnitaryFrame::standard(n);
    let torus = frame_torus(algebra, &standard)?;
    if eps == 0.0 {
        let zero = AlgebraElement::zero(algebra);
        let (x, scale, gap) = match (config.regular_at_zero, config.scale) {
            (true, s) => {
                let r = s.unwrap_or(1.0);
                (regular_element(algebra, r)?, r, regular_gap(n, r))
            }
            (false, _) => (zero.clone(), 0.0, 0.0),
        };
        return Ok(AlgebraDecomposition {
            target: z.clone(),
            norm_x: x.norm(),
            norm_y: 0.0,
            regular_element: x.clone(),
            x,
            y: zero.clone(),
            conjugator: GroupElement::identity(n),
            inner_y: zero.clone(),
            conjugated_target: zero,
            torus,
            scale,
            gap,
            residual: 0.0,
        });
    }
    let r = config.scale.unwrap_or_else(|| eps.sqrt());
    let x0 = regular_element(algebra, r)?;
    let (g, zp) = conjugate_into_torus(algebra, z, &fourier_frame(&standard))?;
    let y0 = invert_ad_on_complement(&x0, &zp, config.complement_tol)?;
    let x = g.ad(&x0)?;
    let y = g.ad(&y0)?;
    let residual = (bracket(&x, &y)? - z).norm();
    if residual.is_nan() || residual > config.tol {
        return Err(Error::NoConvergence { iterations: 1, residual });
    }
    Ok(AlgebraDecomposition {
        target: z.clone(),
        norm_x: x.norm(),
        norm_y: y.norm(),
        x,
        y,
        conjugator: g,
        regular_element: x0,
        inner_y: y0,
        conjugated_target: zp,
        torus,
        scale: r,
        gap: regular_gap(n, r),
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ad_matrix, su};
    use crate::numkit;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn matrix_residual(x: &AlgebraElement, y: &AlgebraElement, z: &AlgebraElement) -> Result<f64> {
        Ok(numkit::frob(&(numkit::commutator(&x.to_matrix()?, &y.to_matrix()?) - z.to_matrix()?)))
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn regular_element_su2_normalisation() {
        let a = su(2);
        let r = 0.3;
        let x = regular_element(&a, r).unwrap();
        let m = x.to_matrix().unwrap();
        let s = r / 2f64.sqrt();
        assert!((m[(0, 0)] - c(0.0, -s)).norm() < 1e-15);
        assert!((m[(1, 1)] - c(0.0, s)).norm() < 1e-15);
        assert!((x.norm() - r).abs() < 1e-15);
    }

    #[test]
    fn regular_element_su3_gaps() {
        let a = su(3);
        let x = regular_element(&a, 1.0).unwrap();
        let cgap = regular_gap(3, 1.0);
        let m = x.to_matrix().unwrap();
        let d: Vec<f64> = (0..3).map(|k| m[(k, k)].im / cgap).collect();
        for (got, want) in d.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn ad_of_regular_element_is_bounded_below_on_complement() {
        for n in 2..=5 {
            let a = su(n);
            let r = 0.7;
            let x = regular_element(&a, r).unwrap();
            let cgap = regular_gap(n, r);
            let sv = ad_matrix(&x).singular_values();
            // the diagonal torus contributes n − 1 zero singular values
            let mut sorted: Vec<f64> = sv.iter().copied().collect();
            sorted.sort_by(f64::total_cmp);
            assert!(sorted[..n - 1].iter().all(|s| s.abs() < 1e-12));
            assert!(sorted[n - 1..].iter().all(|&s| s >= cgap - 1e-12));
        }
    }

    #[test]
    fn invert_su2_closed_form() {
        let a = su(2);
        let x = AlgebraElement::from_matrix(&a, &CMatrix::from_diagonal(&DVector::from_vec(vec![c(0.0, 1.0), c(0.0, -1.0)]))).unwrap();
        let w = AlgebraElement::from_matrix(&a, &CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)])).unwrap();
        let y = invert_ad_on_complement(&x, &w, 1e-12).unwrap();
        let want = CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, -0.5), c(0.0, -0.5), c(0.0, 0.0)]);
        assert!(numkit::frob(&(y.to_matrix().unwrap() - want)) < 1e-14);
        assert!((bracket(&x, &y).unwrap() - &w).norm() < 1e-14);
    }

    #[test]
    fn invert_zero_and_rejections() {
        let a = su(3);
        let x = regular_element(&a, 1.0).unwrap();
        let y = invert_ad_on_complement(&x, &AlgebraElement::zero(&a), 1e-12).unwrap();
        assert_eq!(y.norm(), 0.0);
        let diag = regular_element(&a, 0.5).unwrap();
        let err = invert_ad_on_complement(&x, &diag, 1e-8).unwrap_err();
        assert_eq!(err.name(), "NotInComplement");
        let singular = AlgebraElement::basis(&a, 1) * 0.0 + AlgebraElement::from_matrix(
            &a,
            &CMatrix::from_diagonal(&DVector::from_vec(vec![c(0.0, 1.0), c(0.0, 1.0), c(0.0, -2.0)])),
        )
        .unwrap();
        let w = AlgebraElement::basis(&a, a.dim() - 1);
        assert_eq!(invert_ad_on_complement(&singular, &w, 1e-8).unwrap_err().name(), "NotRegular");
    }

    #[test]
    fn invert_random_su4() {
        let a = su(4);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let x = regular_element(&a, 1.0).unwrap();
        let cgap = regular_gap(4, 1.0);
        for _ in 0..20 {
            // off-diagonal basis vectors span the complement of the diagonal torus
            let mut w = AlgebraElement::random(&a, 1.0, &mut rng);
            let mut coords = w.coords().clone();
            for k in 0..3 {
                coords[k] = 0.0;
            }
            w = AlgebraElement::new(a.clone(), coords);
            let y = invert_ad_on_complement(&x, &w, 1e-10).unwrap();
            assert!((bracket(&x, &y).unwrap() - &w).norm() < 1e-11);
            assert!(y.norm() <= w.norm() / cgap + 1e-12);
        }
    }

    #[test]
    fn su2_target_decomposes() {
        let a = su(2);
        let eps = 1e-3;
        let z = AlgebraElement::from_matrix(&a, &CMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(eps, 0.0), c(-eps, 0.0), c(0.0, 0.0)])).unwrap();
        let d = decompose_algebra(&a, &z, &AlgebraConfig::default()).unwrap();
        assert!(d.residual <= 1e-11);
        assert!((d.norm_x - z.norm().sqrt()).abs() < 1e-14);
        assert!(d.norm_y <= z.norm() / d.gap + 1e-14);
        assert!(matrix_residual(&d.x, &d.y, &z).unwrap() <= 1e-11);
    }

    #[test]
    fn zero_target_modes() {
        let a = su(3);
        let z = AlgebraElement::zero(&a);
        let d = decompose_algebra(&a, &z, &AlgebraConfig::default()).unwrap();
        assert_eq!((d.norm_x, d.norm_y), (0.0, 0.0));
        let cfg = AlgebraConfig {
            regular_at_zero: true,
            scale: Some(0.25),
            ..Default::default()
        };
        let d = decompose_algebra(&a, &z, &cfg).unwrap();
        assert!((d.norm_x - 0.25).abs() < 1e-15);
        assert_eq!(d.norm_y, 0.0);
    }

    #[test]
    fn target_too_large() {
        let a = su(2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let z = AlgebraElement::random(&a, 0.6, &mut rng);
        let e = decompose_algebra(&a, &z, &AlgebraConfig::default()).unwrap_err();
        assert_eq!(e.name(), "TargetTooLarge");
    }

    #[test]
    fn su3_sweep() {
        let a = su(3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut k: f64 = 0.0;
        for _ in 0..100 {
            let z = AlgebraElement::random(&a, 1e-4, &mut rng);
            let d = decompose_algebra(&a, &z, &AlgebraConfig::default()).unwrap();
            assert!(d.residual <= 1e-9);
            k = k.max(d.witness_ratio());
        }
        assert!(k <= 10.0, "K = {k}");
    }

    #[test]
    fn exact_scaling() {
        let a = su(3);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10 {
            let z = AlgebraElement::random(&a, 0.01, &mut rng);
            let base = decompose_algebra(&a, &z, &AlgebraConfig::default()).unwrap();
            for t in [0.5, 0.1] {
                let scaled = decompose_algebra(&a, &(&z * (t * t)), &AlgebraConfig::default()).unwrap();
                assert!((&scaled.x - &(&base.x * t)).norm() < 1e-10);
                assert!((&scaled.y - &(&base.y * t)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn conjugation_invariance_of_norms() {
        let a = su(4);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let z = AlgebraElement::random(&a, 0.01, &mut rng);
            let u = GroupElement::exp(&AlgebraElement::random(&a, 2.0, &mut rng)).unwrap();
            let d1 = decompose_algebra(&a, &z, &AlgebraConfig::default()).unwrap();
            let d2 = decompose_algebra(&a, &u.ad(&z).unwrap(), &AlgebraConfig::default()).unwrap();
            assert!((d1.norm_x - d2.norm_x).abs() < 1e-9);
            assert!((d1.norm_y - d2.norm_y).abs() < 1e-9);
        }
    }
}
