//! Series evaluation against elementary closed forms.

use foxwright::fox_wright::eval_pfq;
use foxwright::{FoxWrightParams, Result};

fn main() -> Result<()> {
    let exp = FoxWrightParams::unit(&[1.0], &[1.0])?;
    let expm1_over_z = FoxWrightParams::unit(&[1.0], &[2.0])?;
    let geometric = FoxWrightParams::unit(&[1.0, 1.0], &[1.0])?;

    println!("{:>6} {:>14} {:>14}", "z", "e^z err", "(e^z-1)/z err");
    for z in [-10.0, -3.0, 0.25, 5.0] {
        let e = exp.eval(z, 1e-15)? / z.exp() - 1.0;
        let f = expm1_over_z.eval(z, 1e-15)? / (z.exp_m1() / z) - 1.0;
        println!("{z:>6} {e:>14.1e} {f:>14.1e}");
    }
    // only inside the unit disk
    for z in [-0.9, 0.5, 0.99] {
        let g = geometric.eval(z, 1e-15)? * (1.0 - z) - 1.0;
        println!("1/(1-z) at {z}: rel err {g:.1e}");
    }

    // 2F1(1, 1; 2; z) = −ln(1 − z)/z
    let z = -0.5f64;
    let v = eval_pfq(&[1.0, 1.0], &[2.0], z, 1e-15)?;
    println!("2F1(1,1;2;{z}) = {v:.15}  (closed form {:.15})", -(-z).ln_1p() / z);

    // Σ (2k)! z^k / (k!)³ has weights (2)/(1, 1) and converges everywhere
    let weighted = FoxWrightParams::from_pairs(&[(1.0, 2.0)], &[(1.0, 1.0), (1.0, 1.0)])?;
    println!("weighted entire series at z = 1: {:.15}", weighted.eval(1.0, 1e-15)?);
    Ok(())
}
