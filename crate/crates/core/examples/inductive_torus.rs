//! Maximal tori orthogonal to the Cartan torus of B, C and D compact forms,
//! built by induction over Levi subsystems.

use liecomm::rootsys::{compact_form_from_roots, orthogonal_torus_for, CartanType, RootSystemPresentation};

fn main() -> liecomm::Result<()> {
    for (t, rank) in [(CartanType::B, 2), (CartanType::B, 3), (CartanType::C, 3), (CartanType::D, 4)] {
        let form = compact_form_from_roots(&RootSystemPresentation::classical(t, rank)?)?;
        let torus = orthogonal_torus_for(&form)?;
        let c = torus.checks(Some(&form.torus))?;
        println!(
            "{t}{rank} (dim {}): {} vectors, toral {:.1e}, orthonormal {:.1e}, orthogonal {:.1e}",
            form.algebra.dim(),
            c.count,
            c.toral,
            c.orthonormal,
            c.orthogonal.unwrap_or(0.0)
        );
    }
    Ok(())
}
