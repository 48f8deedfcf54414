//! Write Z = exp(z) in SU(2) as a group commutator ABA^-1B^-1 with A and B
//! close to the identity.

use liecomm::algebra::su;
use liecomm::group::GroupElement;
use liecomm::solver::{decompose_group, random_target, GroupConfig};

fn main() -> liecomm::Result<()> {
    let algebra = su(2);
    for eps in [1e-2, 1e-3, 1e-4] {
        let z = GroupElement::exp(&random_target(&algebra, eps, 3))?;
        let d = decompose_group(&algebra, &z, &GroupConfig::default())?;
        println!(
            "|log Z| = {eps:.0e}: |A - I| = {:.3e}, |B - I| = {:.3e}, residual {:.1e}, {} Gauss-Newton steps",
            d.distance_a, d.distance_b, d.residual, d.pq_iterations
        );
    }
    Ok(())
}
