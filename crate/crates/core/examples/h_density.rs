//! The H-density: pointwise values and Mellin moments against ψ moments.

use foxwright::hfunction::HDensity;
use foxwright::{FoxWrightParams, Result};

fn main() -> Result<()> {
    // density t on (0, 1)
    let simple = HDensity::from_params(FoxWrightParams::unit(&[1.0], &[2.0])?)?;
    for t in [0.1, 0.5, 0.9] {
        let v = simple.at(t)?;
        println!("H({t}) = {:.12}  (exact {t}, truncation est {:.1e})", v.value, v.truncation_error);
    }

    // weights 1/2 and 3/2, ρ ≠ 1
    let params = FoxWrightParams::from_pairs(&[(1.0, 0.5), (2.0, 1.5)], &[(2.5, 0.5), (3.0, 1.5)])?;
    let density = HDensity::from_params(params.clone())?;
    println!("support (0, {:.6})", density.rho());
    for k in 0..4 {
        let m = density.moment(k)?;
        let psi = params.psi_moment(0, k);
        println!("k={k}: ∫ t^k H dt/t = {:.12}  ψ = {psi:.12}  rel {:.1e}", m.value, (m.value - psi).abs() / psi);
    }
    Ok(())
}
