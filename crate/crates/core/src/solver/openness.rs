//! Empirical openness of the commutator map: how the witness size scales with
//! the target size over random targets.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{AlgebraElement, CompactAlgebra};
use crate::error::{Error, Result};
use crate::group::GroupElement;

use super::algebra::{decompose_algebra, AlgebraConfig};
use super::group::{decompose_group, GroupConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Algebra,
    Group,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Algebra => "algebra",
            Level::Group => "group",
        })
    }
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "algebra" => Ok(Level::Algebra),
            "group" => Ok(Level::Group),
            _ => Err(Error::NotApplicable(format!("unknown level {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OpennessConfig {
    pub level: Level,
    /// Target norms, positive and strictly descending.
    pub eps: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    /// Worker threads; 0 lets the pool decide. Does not affect the report.
    pub jobs: usize,
    pub algebra: AlgebraConfig,
    pub group: GroupConfig,
}

impl OpennessConfig {
    pub fn new(level: Level, eps: Vec<f64>, samples: usize, seed: u64) -> Self {
        OpennessConfig {
            level,
            eps,
            samples,
            seed,
            jobs: 0,
            algebra: AlgebraConfig::default(),
            group: GroupConfig::default(),
        }
    }
}

/// Extremes over the samples at one target norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpennessRow {
    pub eps: f64,
    /// Largest `max(‖x‖, ‖y‖)` (algebra) or `max(‖A − I‖_F, ‖B − I‖_F)` (group).
    pub max_norm: f64,
    pub max_residual: f64,
    /// Successful samples.
    pub succeeded: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleFailure {
    pub eps: f64,
    pub sample: usize,
    /// Seed that reproduces the failing target.
    pub seed: u64,
    pub error: String,
    pub stage: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OpennessReport {
    pub level: Level,
    pub algebra: String,
    pub seed: u64,
    pub samples: usize,
    pub rows: Vec<OpennessRow>,
    /// Least-squares slope of `log max_norm` against `log ε`.
    pub exponent: Option<f64>,
    /// `C` in `max_norm ≈ C·ε^β`.
    pub prefactor: Option<f64>,
    /// `max max_norm/√ε` over the rows.
    pub constant: f64,
    pub failures: Vec<SampleFailure>,
}

impl OpennessReport {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    /// `eps,max_norm,max_residual` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("eps,max_norm,max_residual,succeeded\n");
        for r in &self.rows {
            out.push_str(&format!("{:e},{:e},{:e},{}\n", r.eps, r.max_norm, r.max_residual, r.succeeded));
        }
        out
    }
}

/// Seed of sample `sample` at target index `level`; independent of scheduling.
pub fn sample_seed(seed: u64, eps_index: usize, sample: usize) -> u64 {
    // splitmix64 finaliser over the packed indices
    let mut z = seed ^ ((eps_index as u64) << 40) ^ (sample as u64);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Draw a target with `‖z‖ = eps` from the given seed.
pub fn random_target(algebra: &Arc<CompactAlgebra>, eps: f64, seed: u64) -> AlgebraElement {
    AlgebraElement::random(algebra, eps, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn run_sample(algebra: &Arc<CompactAlgebra>, config: &OpennessConfig, eps: f64, seed: u64) -> Result<(f64, f64)> {
    let z = random_target(algebra, eps, seed);
    match config.level {
        Level::Algebra => {
            let d = decompose_algebra(algebra, &z, &config.algebra)?;
            Ok((d.norm_x.max(d.norm_y), d.residual))
        }
        Level::Group => {
            let d = decompose_group(algebra, &GroupElement::exp(&z)?, &config.group)?;
            Ok((d.distance_a.max(d.distance_b), d.residual))
        }
    }
}

/// Decompose `samples` random targets at each norm in `config.eps`.
///
/// Sample failures are recorded in the report rather than returned.
pub fn measure_openness(algebra: &Arc<CompactAlgebra>, config: &OpennessConfig) -> Result<OpennessReport> {
    if config.eps.is_empty() || config.eps.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
        return Err(Error::NotApplicable("target norms must be positive".into()));
    }
    if config.eps.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::NotApplicable("target norms must be strictly descending".into()));
    }
    if config.samples == 0 {
        return Err(Error::NotApplicable("at least one sample is required".into()));
    }
    let tasks: Vec<(usize, usize)> = (0..config.eps.len())
        .flat_map(|i| (0..config.samples).map(move |s| (i, s)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::NotApplicable(format!("thread pool: {e}")))?;
    let outcomes: Vec<Result<(f64, f64)>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(i, s)| run_sample(algebra, config, config.eps[i], sample_seed(config.seed, i, s)))
            .collect()
    });

    let mut rows: Vec<OpennessRow> = config
        .eps
        .iter()
        .map(|&eps| OpennessRow {
            eps,
            max_norm: 0.0,
            max_residual: 0.0,
            succeeded: 0,
        })
        .collect();
    let mut failures = Vec::new();
    for (&(i, s), outcome) in tasks.iter().zip(outcomes) {
        match outcome {
            Ok((norm, residual)) => {
                let row = &mut rows[i];
                row.max_norm = row.max_norm.max(norm);
                row.max_residual = row.max_residual.max(residual);
                row.succeeded += 1;
            }
            Err(e) => failures.push(SampleFailure {
                eps: config.eps[i],
                sample: s,
                seed: sample_seed(config.seed, i, s),
                error: e.name().to_string(),
                stage: e.stage().map(str::to_string),
            }),
        }
    }
    let (exponent, prefactor) = match fit_power_law(&rows) {
        Some((b, c)) => (Some(b), Some(c)),
        None => (None, None),
    };
    let constant = rows
        .iter()
        .filter(|r| r.succeeded > 0)
        .map(|r| r.max_norm / r.eps.sqrt())
        .fold(0.0, f64::max);
    Ok(OpennessReport {
        level: config.level,
        algebra: algebra.label().to_string(),
        seed: config.seed,
        samples: config.samples,
        rows,
        exponent,
        prefactor,
        constant,
        failures,
    })
}

/// Least-squares `(β, C)` in `max_norm ≈ C·ε^β` over rows with successes.
pub fn fit_power_law(rows: &[OpennessRow]) -> Option<(f64, f64)> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.succeeded > 0 && r.max_norm > 0.0)
        .map(|r| (r.eps.ln(), r.max_norm.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let beta = sxy / sxx;
    Some((beta, (my - beta * mx).exp()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::su;

    #[test]
    fn exponent_near_one_half() {
        let a = su(3);
        let cfg = OpennessConfig::new(Level::Algebra, vec![1e-2, 1e-3, 1e-4, 1e-5, 1e-6], 10, 1);
        let r = measure_openness(&a, &cfg).unwrap();
        assert!(r.is_clean());
        let beta = r.exponent.unwrap();
        assert!((0.4..=0.6).contains(&beta), "beta = {beta}");
        assert!(r.rows.iter().all(|row| row.max_residual <= 1e-9));
    }

    #[test]
    fn deterministic_across_jobs() {
        let a = su(2);
        let mut cfg = OpennessConfig::new(Level::Group, vec![1e-2, 1e-3], 6, 42);
        cfg.jobs = 1;
        let one = measure_openness(&a, &cfg).unwrap();
        cfg.jobs = 4;
        let four = measure_openness(&a, &cfg).unwrap();
        assert_eq!(one, four);
        let single = OpennessConfig::new(Level::Algebra, vec![1e-3], 1, 42);
        let r = measure_openness(&a, &single).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.exponent, None);
        assert_eq!(r, measure_openness(&a, &single).unwrap());
    }

    #[test]
    fn oversized_targets_are_reported() {
        let a = su(2);
        let cfg = OpennessConfig::new(Level::Algebra, vec![2.0, 1e-3], 3, 0);
        let r = measure_openness(&a, &cfg).unwrap();
        assert_eq!(r.failures.len(), 3);
        assert!(r.failures.iter().all(|f| f.error == "TargetTooLarge" && f.eps == 2.0));
        assert_eq!(r.rows[1].succeeded, 3);
        let f = &r.failures[1];
        assert_eq!(f.seed, sample_seed(0, 0, 1));
    }

    #[test]
    fn rejects_bad_eps_lists() {
        let a = su(2);
        for eps in [vec![], vec![1e-3, 1e-2], vec![-1.0], vec![1e-3, 1e-3]] {
            assert!(measure_openness(&a, &OpennessConfig::new(Level::Algebra, eps, 1, 0)).is_err());
        }
    }

    #[test]
    fn csv_has_one_line_per_row() {
        let a = su(2);
        let r = measure_openness(&a, &OpennessConfig::new(Level::Algebra, vec![1e-2, 1e-4], 2, 0)).unwrap();
        assert_eq!(r.to_csv().lines().count(), 3);
    }
}
