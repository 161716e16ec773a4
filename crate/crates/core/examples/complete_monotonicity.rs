//! Finite-difference falsifier for complete monotonicity of x ↦ Ψ(−x).

use foxwright::conditions::{cm_tolerance, numeric_cm_check};
use foxwright::{FoxWrightParams, Result};

fn main() -> Result<()> {
    let params = FoxWrightParams::unit(&[1.0, 1.5], &[2.0, 2.5])?;
    let report = numeric_cm_check(|x| params.eval(-x, 1e-15), (0.5, 4.0), 6, 25)?;
    println!("Ψ(−x) on (0.5, 4): completely monotone up to order 6: {}", report.satisfied);
    for (n, p) in report.details.iter().enumerate() {
        println!("  n={n}: worst (−1)^n f^(n) = {:+.3e}  (tolerance {:.0e})", p.margin, cm_tolerance(n));
    }

    // sin is not: the check finds the first failing order
    let report = numeric_cm_check(|x: f64| Ok(2.0 + x.sin()), (0.5, 4.0), 4, 25)?;
    println!("2 + sin x: {} (first failure {:?})", report.satisfied, report.first_failure);
    Ok(())
}
