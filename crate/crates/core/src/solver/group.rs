//! Group-level decomposition: `Z ∈ SU(n)` near the identity is written as
//! `ABA⁻¹B⁻¹` with `A`, `B` near the identity.

use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

use crate::algebra::{ad_matrix, exp_ad, AlgebraElement, CompactAlgebra};
use crate::error::{Error, Result};
use crate::group::{group_commutator, GroupElement};
use crate::numkit::{self, lstsq_min_norm, mexp, mlog_principal, spectral_norm, CMatrix, RMatrix, RVector};

use super::algebra::{decompose_algebra, AlgebraConfig, AlgebraDecomposition};

const SERIES_TOL: f64 = 1e-16;
const MAX_SERIES_TERMS: usize = 4000;

/// First component of `φ(x, y) = ((e^{ad_y} − 1)/ad_y · x, y)`.
pub fn phi(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    x.check_same(y)?;
    let ad = ad_matrix(y);
    let scale = x.norm();
    let mut term = x.coords().clone();
    let mut sum = term.clone();
    for k in 1..MAX_SERIES_TERMS {
        term = &ad * term / (k as f64 + 1.0);
        sum += &term;
        if term.norm() * term_weight(x) <= SERIES_TOL * scale {
            break;
        }
    }
    Ok(AlgebraElement::new(x.algebra().clone(), sum))
}

// Coordinate norms and invariant norms differ by the Gram matrix; the bound
// only needs to be comparable, so use the largest Gram eigenvalue.
fn term_weight(x: &AlgebraElement) -> f64 {
    x.algebra().gram().norm().sqrt().max(1.0)
}

/// `(−1)^{k+1}·2ζ(2k)` for `k = 1, 2, …`, so that `B_{2k}/(2k)! = c_k/(2π)^{2k}`.
fn bernoulli_weights() -> &'static [f64] {
    static W: OnceLock<Vec<f64>> = OnceLock::new();
    W.get_or_init(|| {
        (1..=MAX_SERIES_TERMS / 2)
            .map(|k| {
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * 2.0 * zeta_even(2 * k)
            })
            .collect()
    })
}

/// `ζ(s)` for even `s ≥ 2`, by a truncated sum with Euler–Maclaurin tail.
fn zeta_even(s: usize) -> f64 {
    let sf = s as f64;
    let m = 1000usize;
    let mut sum = 0.0;
    // add small terms first
    for j in (1..m).rev() {
        sum += (j as f64).powf(-sf);
    }
    let mf = m as f64;
    sum + mf.powf(1.0 - sf) / (sf - 1.0) + 0.5 * mf.powf(-sf) + sf / 12.0 * mf.powf(-sf - 1.0)
}

/// Safety factor on the adjoint spectrum in [`phi_inverse_first`].
pub const SPECTRAL_MARGIN: f64 = 0.9;

/// Inverse of [`phi`] in its first argument: `ad_y/(e^{ad_y} − 1) · c`.
pub fn phi_inverse_first(c: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    c.check_same(y)?;
    let ad = ad_matrix(y);
    let radius = spectral_norm(&ad);
    let limit = SPECTRAL_MARGIN * 2.0 * PI;
    if radius >= limit {
        return Err(Error::SpectrumTooLarge { norm: radius, limit });
    }
    let scaled: RMatrix = &ad / (2.0 * PI);
    let scale = c.norm();
    let w = term_weight(c);
    // t/(eᵗ − 1) = 1 − t/2 + Σ_k B_{2k} t^{2k}/(2k)!
    let mut sum: RVector = c.coords() - (&scaled * c.coords()) * PI;
    let mut power = c.coords().clone();
    for &weight in bernoulli_weights() {
        power = &scaled * (&scaled * power);
        let term = &power * weight;
        sum += &term;
        if term.norm() * w <= SERIES_TOL * scale {
            break;
        }
    }
    Ok(AlgebraElement::new(c.algebra().clone(), sum))
}

/// `C(x, y) = x − e^{ad_y} x`.
pub fn c_map(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    Ok(x - exp_ad(y, x)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PqConfig {
    /// Stop once `‖e^{Ad_P a} e^{Ad_Q b} − e^{a+b}‖_F` is at most this.
    pub tol: f64,
    pub max_iterations: usize,
    /// Relative singular value cutoff of the Gauss–Newton step.
    pub rcond: f64,
    /// Largest admissible `‖a‖ + ‖b‖`.
    pub max_input: f64,
    /// Phase margin for the principal logarithm of the residual.
    pub log_margin: f64,
}

impl Default for PqConfig {
    fn default() -> Self {
        PqConfig {
            tol: 1e-10,
            max_iterations: 50,
            rcond: 1e-10,
            max_input: 0.5,
            log_margin: 1e-6,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PqSolution {
    pub p: GroupElement,
    pub q: GroupElement,
    /// Exponents with `P = exp(p_log)`, `Q = exp(q_log)`.
    pub p_log: AlgebraElement,
    pub q_log: AlgebraElement,
    pub iterations: usize,
    pub residual: f64,
    /// Norm of the log-residual after each accepted step, starting at `p = q = 0`.
    pub history: Vec<f64>,
}

struct PqProblem<'a> {
    algebra: &'a Arc<CompactAlgebra>,
    a: CMatrix,
    b: CMatrix,
    target_inv: CMatrix,
    target: CMatrix,
    margin: f64,
}

impl PqProblem<'_> {
    fn product(&self, theta: &RVector) -> Result<CMatrix> {
        let d = self.algebra.dim();
        let p = mexp(&self.element(theta.rows(0, d).into_owned())?);
        let q = mexp(&self.element(theta.rows(d, d).into_owned())?);
        let ea = mexp(&(&p * &self.a * p.adjoint()));
        let eb = mexp(&(&q * &self.b * q.adjoint()));
        Ok(ea * eb)
    }

    fn element(&self, coords: RVector) -> Result<CMatrix> {
        AlgebraElement::new(self.algebra.clone(), coords).to_matrix()
    }

    fn log_residual(&self, theta: &RVector) -> Result<RVector> {
        let m = self.product(theta)? * &self.target_inv;
        let l = mlog_principal(&m, self.margin)?;
        Ok(AlgebraElement::from_matrix(self.algebra, &l)?.into_coords())
    }

    fn matrix_residual(&self, theta: &RVector) -> Result<f64> {
        Ok(numkit::frob(&(self.product(theta)? - &self.target)))
    }

    fn norm(&self, v: &RVector) -> f64 {
        v.dot(&(self.algebra.gram() * v)).max(0.0).sqrt()
    }
}

/// Find `P, Q` near the identity with `exp(Ad_P a)·exp(Ad_Q b) = exp(a + b)`.
pub fn solve_pq(a: &AlgebraElement, b: &AlgebraElement, config: &PqConfig) -> Result<PqSolution> {
    a.check_same(b)?;
    let algebra = a.algebra();
    let size = a.norm() + b.norm();
    if size > config.max_input {
        return Err(Error::TargetTooLarge {
            norm: size,
            limit: config.max_input,
        });
    }
    let am = a.to_matrix()?;
    let bm = b.to_matrix()?;
    let target = mexp(&(&am + &bm));
    let problem = PqProblem {
        algebra,
        a: am,
        b: bm,
        target_inv: target.adjoint(),
        target,
        margin: config.log_margin,
    };
    let d = algebra.dim();
    let mut theta = RVector::zeros(2 * d);
    let mut f = problem.log_residual(&theta)?;
    let mut fnorm = problem.norm(&f);
    let mut history = vec![fnorm];
    let mut iterations = 0;
    loop {
        let residual = problem.matrix_residual(&theta)?;
        if residual <= config.tol {
            let p_log = AlgebraElement::new(algebra.clone(), theta.rows(0, d).into_owned());
            let q_log = AlgebraElement::new(algebra.clone(), theta.rows(d, d).into_owned());
            return Ok(PqSolution {
                p: GroupElement::exp(&p_log)?,
                q: GroupElement::exp(&q_log)?,
                p_log,
                q_log,
                iterations,
                residual,
                history,
            });
        }
        if iterations == config.max_iterations {
            return Err(Error::NoConvergence { iterations, residual });
        }
        iterations += 1;
        let h = 1e-6 * theta.norm().max(1.0);
        let mut jac = RMatrix::zeros(d, 2 * d);
        for k in 0..2 * d {
            let mut plus = theta.clone();
            plus[k] += h;
            let mut minus = theta.clone();
            minus[k] -= h;
            let col = (problem.log_residual(&plus)? - problem.log_residual(&minus)?) / (2.0 * h);
            jac.set_column(k, &col);
        }
        let step = lstsq_min_norm(&jac, &(-&f), config.rcond)?.x;
        let mut lambda = 1.0;
        loop {
            let trial = &theta + &step * lambda;
            let ft = problem.log_residual(&trial)?;
            let nt = problem.norm(&ft);
            if nt < fnorm {
                theta = trial;
                f = ft;
                fnorm = nt;
                history.push(nt);
                break;
            }
            lambda *= 0.5;
            if lambda < 1e-8 {
                return Err(Error::NoConvergence { iterations, residual });
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupConfig {
    /// Largest admissible `‖log Z‖`.
    pub z_max: f64,
    /// Required bound on `‖ABA⁻¹B⁻¹ − Z‖_F`.
    pub tol: f64,
    /// Phase margin for `log Z`.
    pub log_margin: f64,
    pub algebra: AlgebraConfig,
    pub pq: PqConfig,
}

impl Default for GroupConfig {
    fn default() -> Self {
        GroupConfig {
            z_max: 0.05,
            tol: 1e-8,
            log_margin: 1e-6,
            algebra: AlgebraConfig::default(),
            pq: PqConfig::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GroupDecomposition {
    pub target: GroupElement,
    pub a: GroupElement,
    pub b: GroupElement,
    /// `x = φ⁻¹(c, y)`, the exponent of `A` before conjugation by `P`.
    pub x: AlgebraElement,
    pub y: AlgebraElement,
    pub p: GroupElement,
    pub q: GroupElement,
    /// `log Z`.
    pub log_target: AlgebraElement,
    /// The algebra-level decomposition of `log Z`.
    pub algebra: Option<AlgebraDecomposition>,
    pub pq_iterations: usize,
    pub residual: f64,
    pub distance_a: f64,
    pub distance_b: f64,
}

/// Decompose `Z` as `ABA⁻¹B⁻¹` with `A = P e^x P⁻¹`, `B = Q e^y P⁻¹`.
pub fn decompose_group(
    algebra: &Arc<CompactAlgebra>,
    z: &GroupElement,
    config: &GroupConfig,
) -> Result<GroupDecomposition> {
    let n = z.n();
    if algebra.matrix_size() != Some(n) {
        return Err(Error::DimensionMismatch(format!(
            "{} does not act on C^{n}",
            algebra.label()
        )));
    }
    let log = mlog_principal(z.matrix(), config.log_margin).map_err(Error::at("log"))?;
    let log_target = AlgebraElement::from_matrix(algebra, &log).map_err(Error::at("log"))?;
    let eps = log_target.norm();
    if eps > config.z_max {
        return Err(Error::at("log")(Error::TargetTooLarge {
            norm: eps,
            limit: config.z_max,
        }));
    }
    if eps == 0.0 {
        let id = GroupElement::identity(n);
        let zero = AlgebraElement::zero(algebra);
        let residual = numkit::frob(&(group_commutator(&id, &id).matrix() - z.matrix()));
        return Ok(GroupDecomposition {
            target: z.clone(),
            a: id.clone(),
            b: id.clone(),
            x: zero.clone(),
            y: zero,
            p: id.clone(),
            q: id,
            log_target,
            algebra: None,
            pq_iterations: 0,
            residual,
            distance_a: 0.0,
            distance_b: 0.0,
        });
    }
    let dec = decompose_algebra(algebra, &log_target, &config.algebra).map_err(Error::at("algebra"))?;
    let y = dec.y.clone();
    let x = phi_inverse_first(&dec.x, &y).map_err(Error::at("phi"))?;
    let b_exp = -exp_ad(&y, &x)?;
    let pq = solve_pq(&x, &b_exp, &config.pq).map_err(Error::at("pq"))?;
    let ex = GroupElement::exp(&x)?;
    let ey = GroupElement::exp(&y)?;
    let a = pq.p.mul(&ex).mul(&pq.p.inverse());
    let b = pq.q.mul(&ey).mul(&pq.p.inverse());
    let residual = numkit::frob(&(group_commutator(&a, &b).matrix() - z.matrix()));
    if residual.is_nan() || residual > config.tol {
        return Err(Error::at("verify")(Error::NoConvergence {
            iterations: pq.iterations,
            residual,
        }));
    }
    Ok(GroupDecomposition {
        target: z.clone(),
        distance_a: a.distance_to_identity(),
        distance_b: b.distance_to_identity(),
        a,
        b,
        x,
        y,
        p: pq.p,
        q: pq.q,
        log_target,
        algebra: Some(dec),
        pq_iterations: pq.iterations,
        residual,
    })
}
