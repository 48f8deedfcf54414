//! Fit the exponent in max witness size ~ C * eps^beta over random targets.

use liecomm::algebra::su;
use liecomm::solver::{measure_openness, Level, OpennessConfig};

fn main() -> liecomm::Result<()> {
    for (level, n) in [(Level::Algebra, 4), (Level::Group, 3)] {
        let config = OpennessConfig::new(level, vec![1e-2, 1e-3, 1e-4, 1e-5], 25, 1);
        let report = measure_openness(&su(n), &config)?;
        println!("{level} level, su({n}): beta = {:.4}, K = {:.3}", report.exponent.unwrap_or(f64::NAN), report.constant);
        print!("{}", report.to_csv());
    }
    Ok(())
}
