//! Argument-principle zero counts in rectangles.

use foxwright::conditions::{count_zeros_in_rect, zero_count_right_half, Rect};
use foxwright::{FoxWrightParams, Result};

fn main() -> Result<()> {
    let f = FoxWrightParams::unit(&[1.0], &[2.0])?; // (e^z − 1)/z
    let right = Rect::new(0.1, 4.0, -6.0, 6.0)?;
    println!("right half-plane zeros: {}", zero_count_right_half(&f, right, 512)?);

    // zeros of (e^z − 1)/z are 2πik, k ≠ 0; straddle the imaginary axis
    let strip = Rect::new(-1.0, 1.0, 1.0, 13.0)?;
    println!("zeros in (−1, 1) × (1, 13): {} (expect 2: 2πi and 4πi)", count_zeros_in_rect(&f, strip, 512)?);

    let exp = FoxWrightParams::unit(&[1.0], &[1.0])?;
    let box_ = Rect::new(-2.0, 2.0, -2.0, 2.0)?;
    println!("zeros of e^z in (−2, 2)²: {}", count_zeros_in_rect(&exp, box_, 512)?);
    Ok(())
}
