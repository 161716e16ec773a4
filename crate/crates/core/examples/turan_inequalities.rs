//! Turán-type margins in σ and in the common weight A.

use foxwright::conditions::{log_convexity_probe, turan_in_a, turan_in_sigma};
use foxwright::{FoxWrightParams, Result};

fn main() -> Result<()> {
    let params = FoxWrightParams::unit(&[1.0], &[2.0])?;
    for sigma in [0.5, 1.0, 2.0] {
        let margins: Vec<String> = [0.1, 0.5, 0.9]
            .iter()
            .map(|&z| turan_in_sigma(&params, sigma, z).map(|m| format!("{m:+.3e}")))
            .collect::<Result<_>>()?;
        println!("σ={sigma}: {}", margins.join("  "));
    }

    // in A the margin is nonnegative for z ≥ 0 but not for every z < 0
    for z in [0.5, -0.5, -1.0] {
        println!("A=1, z={z:+}: {:+.6}", turan_in_a(&params, 1.0, z)?);
    }

    let curve = |a: f64| params.with_weight(a)?.eval(-0.5, 1e-15);
    let probe = log_convexity_probe(curve, &[(0.5, 2.0, 0.5), (1.0, 3.0, 0.25)])?;
    println!("log-convex in A at z = −0.5: {}", probe.satisfied);
    Ok(())
}
