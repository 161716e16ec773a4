//! Laplace, Stieltjes, reciprocal-argument and λ-transform representations.

use foxwright::hfunction::{
    verify_lambda_transform, verify_laplace_rep, verify_reciprocal_laplace, verify_stieltjes_rep, HDensity,
};
use foxwright::{FoxWrightParams, Result};

fn main() -> Result<()> {
    let params = FoxWrightParams::unit(&[1.0, 2.0], &[2.5, 3.0])?;
    let density = HDensity::from_params(params.clone())?;

    for z in [-3.0, 0.0, 3.0] {
        let r = verify_laplace_rep(&density, z)?;
        println!("laplace    z={z:+}: series {:.12} integral {:.12} rel {:.1e}", r.series, r.integral, r.rel_residual);
    }
    for sigma in [0.5, 1.0, 2.0] {
        let r = verify_stieltjes_rep(&density, sigma, 0.5)?;
        println!("stieltjes  σ={sigma}: rel {:.1e}", r.rel_residual);
    }
    let r = verify_reciprocal_laplace(&params, 2.0)?;
    println!("reciprocal z=2: rel {:.1e}", r.rel_residual);
    let r = verify_lambda_transform(&params, 1.5, 1.0, 2.0)?;
    println!("λ-transform λ=1.5, z=2: rel {:.1e}", r.rel_residual);
    Ok(())
}
