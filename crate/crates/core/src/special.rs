//! Real gamma-family and zeta-family kernels, plus the complex log-gamma
//! used on Mellin-Barnes contours.
//!
//! All arguments of the real kernels are positive; there is no reflection
//! branch. Accuracy targets: `ln_gamma` ~1e-15 relative away from its zeros,
//! `digamma` ~1e-15 absolute, `hurwitz_zeta` ~1e-14 relative.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// ln(2π)/2
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Even-index Bernoulli numbers B_2, B_4, ..., B_20.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Bernoulli number B_n for n ≤ 20 (B_1 = -1/2 convention).
pub(crate) fn bernoulli_number(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => -0.5,
        n if n % 2 == 1 => 0.0,
        n if n <= 20 => BERNOULLI_EVEN[n / 2 - 1],
        _ => panic!("bernoulli_number: n = {n} out of table range"),
    }
}

/// Bernoulli polynomial B_n(x) for n ≤ 20.
pub(crate) fn bernoulli_poly(n: usize, x: f64) -> f64 {
    let mut binom = 1.0;
    let mut acc = 0.0;
    for k in 0..=n {
        acc += binom * bernoulli_number(k) * x.powi((n - k) as i32);
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    acc
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} requires a positive finite argument, got {x}")))
    }
}

/// ζ(k) − 1 for k = 2..=41, used by the Taylor series of ln Γ around 1.
fn zeta_minus_one_table() -> &'static [f64; 40] {
    static TABLE: OnceLock<[f64; 40]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0; 40];
        for (i, slot) in t.iter_mut().enumerate() {
            let k = (i + 2) as f64;
            // ζ(k) − 1 = ζ(k, 2)
            *slot = hurwitz_zeta(k, 2.0).expect("k ≥ 2");
        }
        t
    })
}

/// ln Γ(1 + z) for |z| ≤ 1/2.
fn ln_gamma_1p(z: f64) -> f64 {
    let table = zeta_minus_one_table();
    let mut acc = 0.0;
    let mut zk = z * z;
    for (i, c) in table.iter().enumerate() {
        let k = (i + 2) as f64;
        let term = c * zk / k;
        acc += if i % 2 == 0 { term } else { -term };
        if term.abs() < 1e-18 * acc.abs().max(1e-300) {
            break;
        }
        zk *= z;
    }
    -z.ln_1p() + z * (1.0 - EULER_GAMMA) + acc
}

fn stirling_tail(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut acc = 0.0;
    for (k, b) in BERNOULLI_EVEN.iter().take(8).enumerate() {
        let n = 2.0 * (k as f64 + 1.0);
        acc += b / (n * (n - 1.0)) * pow;
        pow *= inv2;
    }
    acc
}

/// Natural logarithm of Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    check_positive("ln_gamma", x)?;
    Ok(ln_gamma_unchecked(x))
}

pub(crate) fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        ln_gamma_unchecked(x + 1.0) - x.ln()
    } else if x <= 1.5 {
        ln_gamma_1p(x - 1.0)
    } else if x <= 2.5 {
        let z = x - 2.0;
        z.ln_1p() + ln_gamma_1p(z)
    } else if x < 20.0 {
        // walk down into (1.5, 2.5]
        let mut y = x;
        let mut prod = 1.0;
        while y > 2.5 {
            y -= 1.0;
            prod *= y;
        }
        prod.ln() + ln_gamma_unchecked(y)
    } else {
        (x - 0.5) * x.ln() - x + HALF_LN_2PI + stirling_tail(x)
    }
}

/// Γ(num₁)···Γ(num_p) / Γ(den₁)···Γ(den_q), accumulated in log space.
pub fn gamma_ratio(num: &[f64], den: &[f64]) -> Result<f64> {
    ln_gamma_ratio(num, den).map(f64::exp)
}

/// Logarithm of [`gamma_ratio`].
pub fn ln_gamma_ratio(num: &[f64], den: &[f64]) -> Result<f64> {
    let mut acc = 0.0;
    for &x in num {
        acc += ln_gamma(x)?;
    }
    for &x in den {
        acc -= ln_gamma(x)?;
    }
    Ok(acc)
}

/// Digamma function ψ(x) = Γ'(x)/Γ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    check_positive("digamma", x)?;
    let mut x = x;
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut pow = inv2;
    let mut series = 0.0;
    for (k, b) in BERNOULLI_EVEN.iter().take(8).enumerate() {
        let n = 2.0 * (k as f64 + 1.0);
        series += b / n * pow;
        pow *= inv2;
    }
    Ok(acc + x.ln() - 0.5 / x - series)
}

/// Hurwitz zeta function ζ(s, a) = Σ_{n≥0} (n + a)^{-s} for s > 1, a > 0.
///
/// Direct summation until the shifted argument clears `s + 20`, then an
/// Euler-Maclaurin tail with ten Bernoulli corrections.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    if !(s.is_finite() && s > 1.0) {
        return Err(Error::Domain(format!("hurwitz_zeta requires s > 1, got {s}")));
    }
    check_positive("hurwitz_zeta (a)", a)?;

    let threshold = s.max(1.0) + 20.0;
    let n = if a >= threshold { 0 } else { (threshold - a).ceil() as usize };
    let x = a + n as f64;

    // Euler-Maclaurin tail at x
    let x_pow = x.powf(-s);
    let mut tail = x * x_pow / (s - 1.0) + 0.5 * x_pow;
    let mut rising = s; // s(s+1)...(s+2k-2)
    let mut fact = 2.0; // (2k)!
    let mut pow = x_pow / x;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = b / fact * rising * pow;
        tail += term;
        if term.abs() <= 1e-17 * tail.abs() {
            break;
        }
        let kk = (k + 1) as f64;
        rising *= (s + 2.0 * kk - 1.0) * (s + 2.0 * kk);
        fact *= (2.0 * kk + 1.0) * (2.0 * kk + 2.0);
        pow /= x * x;
    }

    // smallest terms first
    let mut head = 0.0;
    for i in (0..n).rev() {
        head += (a + i as f64).powf(-s);
    }
    Ok(head + tail)
}

/// Riemann zeta ζ(s) for s > 1.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    hurwitz_zeta(s, 1.0)
}

/// Complex log-gamma for Re(z) > 0.
///
/// Stirling series after shifting |z| above 12. The imaginary part is
/// only determined modulo 2π; callers exponentiate.
pub fn ln_gamma_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite() && z.re > 0.0) {
        return Err(Error::Domain(format!("ln_gamma_complex requires Re(z) > 0, got {z}")));
    }
    Ok(ln_gamma_complex_unchecked(z))
}

pub(crate) fn ln_gamma_complex_unchecked(mut z: Complex64) -> Complex64 {
    let mut prod = Complex64::new(1.0, 0.0);
    let mut shifted = false;
    while z.norm_sqr() < 144.0 {
        prod *= z;
        z += 1.0;
        shifted = true;
    }
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    let mut series = Complex64::new(0.0, 0.0);
    for (k, b) in BERNOULLI_EVEN.iter().take(8).enumerate() {
        let n = 2.0 * (k as f64 + 1.0);
        series += pow * (b / (n * (n - 1.0)));
        pow *= inv2;
    }
    let mut out = (z - 0.5) * z.ln() - z + HALF_LN_2PI + series;
    if shifted {
        out -= prod.ln();
    }
    out
}

/// Γ(x) for moderate positive x, via `ln_gamma`.
pub fn gamma(x: f64) -> Result<f64> {
    ln_gamma(x).map(f64::exp)
}

/// π²/6, handy in tests and bounds.
pub const ZETA_2: f64 = PI * PI / 6.0;
