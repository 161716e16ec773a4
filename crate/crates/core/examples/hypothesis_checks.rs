//! The H1 and H2 hypothesis sets, with per-predicate margins.

use foxwright::conditions::{check_h1, check_h2, check_theorem_hypotheses};
use foxwright::{FoxWrightParams, Result};

fn main() -> Result<()> {
    let good = FoxWrightParams::unit(&[1.0], &[2.0])?;
    let bad = FoxWrightParams::unit(&[1.0], &[1.0])?;
    for (name, p) in [("(1)/(2)", &good), ("(1)/(1)", &bad)] {
        let h1 = check_h1(p, 8)?;
        let hyp = check_theorem_hypotheses(p);
        println!("{name}: H1 up to n=8 {} (first failure {:?}); balanced & μ>0 {}", h1.satisfied, h1.first_failure, hyp.satisfied);
    }

    let h2 = check_h2(&[1.0, 2.0], &[1.5, 3.0])?;
    println!("H2 on (1, 2)/(1.5, 3): {} with ψ̄ = {}", h2.report.satisfied, h2.psi_bar);
    for p in &h2.report.details {
        println!("  {:<40} margin {:+.3}", p.name, p.margin);
    }
    let h2 = check_h2(&[2.0, 1.0], &[3.0, 3.0])?;
    println!("H2 on (2, 1)/(3, 3): {} (first failure {:?})", h2.report.satisfied, h2.report.first_failure);
    Ok(())
}
