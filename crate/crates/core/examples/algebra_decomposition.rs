//! Write a small z in su(3) as [x, y] with x and y of size about sqrt(|z|).

use liecomm::algebra::su;
use liecomm::solver::{decompose_algebra, random_target, AlgebraConfig};

fn main() -> liecomm::Result<()> {
    let algebra = su(3);
    for eps in [1e-2, 1e-4, 1e-6] {
        let z = random_target(&algebra, eps, 7);
        let d = decompose_algebra(&algebra, &z, &AlgebraConfig::default())?;
        println!(
            "|z| = {eps:.0e}: |x| = {:.3e}, |y| = {:.3e}, residual {:.1e}",
            d.norm_x, d.norm_y, d.residual
        );
    }
    Ok(())
}
