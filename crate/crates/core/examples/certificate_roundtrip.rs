//! Produce a certificate, re-verify it from its witnesses, and show that a
//! tampered witness is caught.

use liecomm::algebra::su;
use liecomm::cert::{Certificate, ConfigEcho, Dec, Payload};
use liecomm::solver::{decompose_algebra, random_target, AlgebraConfig};

fn main() -> liecomm::Result<()> {
    let algebra = su(3);
    let z = random_target(&algebra, 1e-3, 5);
    let config = AlgebraConfig::default();
    let d = decompose_algebra(&algebra, &z, &config)?;
    let echo = ConfigEcho {
        tol: Dec(config.tol),
        z_max: Some(Dec(config.z_max)),
        seed: Some(5),
        eps: Some(Dec(1e-3)),
    };
    let cert = Certificate::from_algebra(&d, echo)?;
    let text = cert.to_canonical_string();
    let parsed = Certificate::parse(&text)?;
    println!("round trip byte-identical: {}", parsed.to_canonical_string() == text);
    print!("{}", parsed.verify()?);

    let mut tampered = parsed;
    if let Payload::Algebra(c) = &mut tampered.payload {
        c.x.0[(0, 1)].re += 1e-3;
    }
    let v = tampered.verify()?;
    let failed: Vec<_> = v.failures().map(|c| c.name.as_str()).collect();
    println!("tampered certificate fails: {}", failed.join(", "));
    Ok(())
}
