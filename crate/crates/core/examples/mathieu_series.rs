//! Generalized Mathieu series with the zeta and digamma bounds.
//!
//! The zeta bounds are computed exactly as stated; for these parameters the
//! sum does not lie between them, which the output shows.

use foxwright::mathieu::{mathieu_sweep, verify_mathieu_integral_rep, write_mathieu_csv, MathieuSpec};
use foxwright::report::fmt_real;
use foxwright::Result;

fn main() -> Result<()> {
    let spec = MathieuSpec::new(1.0, 1.0, 4.0, 1.0, 0.0)?;
    println!("s = {}, w = {}", spec.exponent(), spec.weight());
    let rows = mathieu_sweep(&spec, &[0.0, 0.5, 1.0, 2.0, 5.0], 1e-12)?;
    write_mathieu_csv(std::io::stdout().lock(), &rows, fmt_real)?;
    for row in &rows {
        println!("r={}: L ≤ sum ≤ R {}; L1 ≤ sum ≤ R1 {:?}", row.r, row.contained(1e-8), row.contained_digamma(1e-8));
    }

    let check = verify_mathieu_integral_rep(&spec.with_r(1.0)?, 1e-10)?;
    println!("integral representation at r=1: rel residual {:.1e}", check.rel_residual);
    Ok(())
}
