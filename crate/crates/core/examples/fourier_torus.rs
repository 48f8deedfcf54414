//! Mutually unbiased frames and the orthogonal tori they span in su(n).

use liecomm::algebra::su;
use liecomm::rootsys::{fourier_frame, fourier_orthogonal_torus, frame_torus, unbiasedness_defect, UnitaryFrame};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> liecomm::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    println!("{:>3}  {:>14}  {:>14}  {:>14}", "n", "unbiasedness", "orthogonality", "toral");
    for n in 2..=6 {
        let algebra = su(n);
        let u = UnitaryFrame::random(n, &mut rng);
        let v = fourier_frame(&u);
        let reference = frame_torus(&algebra, &u)?;
        let torus = fourier_orthogonal_torus(&algebra, &u)?;
        let checks = torus.checks(Some(&reference))?;
        println!(
            "{n:>3}  {:>14.2e}  {:>14.2e}  {:>14.2e}",
            unbiasedness_defect(&u, &v),
            checks.orthogonal.unwrap_or(0.0),
            checks.toral
        );
    }
    Ok(())
}
