//! Luke-type two-sided envelopes and a sweep written as CSV.

use foxwright::bounds::{luke_bounds, luke_bounds_lambda, luke_sweep, pfq_luke, write_envelopes_csv, Checking, LukeBounds};
use foxwright::report::fmt_real;
use foxwright::{FoxWrightParams, Result};

fn main() -> Result<()> {
    let params = FoxWrightParams::unit(&[1.0], &[2.0])?;
    let e = luke_bounds(&params, 1.0, Checking::Checked)?;
    println!("z=1: {:.10} ≤ {:.10} ≤ {:.10}", e.lower, e.value.unwrap_or(f64::NAN), e.upper);

    let e = luke_bounds_lambda(&params, 1.0, 1.0, Checking::Checked)?;
    println!("λ=1, z=1: {:.10} ≤ {:.10} (ln 2) ≤ {:.10}", e.lower, e.value.unwrap_or(f64::NAN), e.upper);

    let e = pfq_luke(&[1.0], &[2.0], 1.0, 0.5, Checking::Checked)?;
    println!("2F1 form, z=0.5: {:.6} ≤ {:.6} ≤ {:.6}", e.lower, e.value.unwrap_or(f64::NAN), e.upper);

    let luke = LukeBounds::new(FoxWrightParams::unit(&[1.0, 2.0], &[2.5, 3.0])?, Checking::Checked)?;
    let zs: Vec<f64> = (0..6).map(|i| 0.05 * 20f64.powf(i as f64 / 5.0)).collect();
    let rows = luke_sweep(&luke, &zs)?;
    write_envelopes_csv(std::io::stdout().lock(), &rows, fmt_real)?;
    Ok(())
}
