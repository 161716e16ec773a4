//! Δ, ∇, ρ, μ and the resulting domain of the series.

use foxwright::fox_wright::SeriesDomain;
use foxwright::{FoxWrightParams, Result};

fn main() -> Result<()> {
    let cases = [
        ("e^z", FoxWrightParams::unit(&[1.0], &[1.0])?),
        ("1/(1-z)", FoxWrightParams::unit(&[1.0, 1.0], &[1.0])?),
        ("balanced, weights 2", FoxWrightParams::from_pairs(&[(1.0, 2.0)], &[(3.0, 2.0)])?),
        ("disk, weight 2", FoxWrightParams::from_pairs(&[(1.0, 2.0)], &[(1.0, 1.0)])?),
        ("divergent", FoxWrightParams::from_pairs(&[(1.0, 2.0)], &[])?),
    ];
    for (name, params) in &cases {
        let c = params.convergence();
        let domain = match params.domain() {
            SeriesDomain::Entire => "entire".to_string(),
            SeriesDomain::Disk { radius } => format!("|z| < {radius}"),
            SeriesDomain::Divergent => "z = 0 only".to_string(),
        };
        println!(
            "{name:<20} Δ={:+.3} ∇={:.4} ρ={:.4} μ={:+.3} γ={:+.3} balanced={} → {domain}",
            c.delta, c.nabla, c.rho, c.mu, c.gamma_pole, c.balanced
        );
    }
    Ok(())
}
