//! Double-exponential quadrature on finite and half-infinite intervals.
//!
//! Both rules refine by halving the step in the transformed variable and
//! reuse every previously evaluated node. They tolerate integrable
//! algebraic singularities at the endpoints, which is what the H-density
//! integrals near `t = ρ` and the Mathieu integral near `x = 0` need.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Relative tolerance on successive level estimates.
    pub tol: f64,
    /// Finest level; the step in the transformed variable is `2^-max_level`.
    pub max_level: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { tol: 1e-12, max_level: 8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: f64,
    /// |I_L − I_{L−1}| at the final level.
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadEstimate {
    /// Turn a non-converged estimate into an error when it is off by more
    /// than `slack` relative.
    pub fn require(self, slack: f64) -> Result<f64> {
        if self.converged || self.error <= slack * self.value.abs().max(1e-300) {
            Ok(self.value)
        } else {
            Err(Error::Quadrature(format!(
                "estimate {} has error {} after {} evaluations",
                self.value, self.error, self.evaluations
            )))
        }
    }
}

/// Transformed-variable window for the exp-sinh rule. The lower end reaches
/// offsets near 1e-226 so that v^(μ-1) singularities with small μ are
/// resolved.
const EXP_SINH_LO: f64 = -6.5;
const EXP_SINH_HI: f64 = 4.5;
const TANH_SINH_HALF: f64 = 4.0;

fn refine<F>(mut sum_level: F, opts: QuadOptions) -> Result<QuadEstimate>
where
    F: FnMut(usize) -> Result<(f64, usize)>,
{
    // sum_level(level) returns the weighted sum over the nodes that are new
    // at that level (all nodes at level 0) and the count of evaluations.
    let (mut raw, mut evaluations) = sum_level(0)?;
    let mut step = 1.0;
    let mut estimate = raw * step;
    let mut error = f64::INFINITY;
    for level in 1..=opts.max_level {
        let (fresh, n) = sum_level(level)?;
        evaluations += n;
        raw += fresh;
        step *= 0.5;
        let next = raw * step;
        error = (next - estimate).abs();
        estimate = next;
        if !estimate.is_finite() {
            return Err(Error::Quadrature(format!("non-finite estimate at level {level}")));
        }
        if level >= 3 && error <= opts.tol * estimate.abs() {
            return Ok(QuadEstimate { value: estimate, error, evaluations, converged: true });
        }
        if level >= 3 && estimate == 0.0 && error == 0.0 {
            return Ok(QuadEstimate { value: 0.0, error: 0.0, evaluations, converged: true });
        }
    }
    Ok(QuadEstimate { value: estimate, error, evaluations, converged: false })
}

/// Node indices that are new at `level` on the grid τ = k·2^-level.
fn new_indices(level: usize, lo: f64, hi: f64) -> impl Iterator<Item = (f64, f64)> {
    let h = 0.5f64.powi(level as i32);
    let kmin = (lo / h).ceil() as i64;
    let kmax = (hi / h).floor() as i64;
    (kmin..=kmax)
        .filter(move |k| level == 0 || k.rem_euclid(2) == 1)
        .map(move |k| (k as f64 * h, h))
}

/// ∫_a^∞ f(x) dx by the exp-sinh substitution x = a + exp(π/2·sinh τ).
///
/// `f` may return `Ok(0.0)` beyond its own cutoff; it is never called with
/// a non-finite abscissa.
pub fn exp_sinh<F>(mut f: F, a: f64, opts: QuadOptions) -> Result<QuadEstimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    refine(
        |level| {
            let mut acc = 0.0;
            let mut n = 0;
            for (tau, _) in new_indices(level, EXP_SINH_LO, EXP_SINH_HI) {
                let u = FRAC_PI_2 * tau.sinh();
                let offset = u.exp();
                let weight = FRAC_PI_2 * tau.cosh() * offset;
                let x = a + offset;
                if !x.is_finite() || weight == 0.0 {
                    continue;
                }
                let fx = f(x)?;
                n += 1;
                if fx != 0.0 {
                    acc += weight * fx;
                }
            }
            Ok((acc, n))
        },
        opts,
    )
}

/// ∫_a^b f(x) dx by the tanh-sinh substitution.
pub fn tanh_sinh<F>(mut f: F, a: f64, b: f64, opts: QuadOptions) -> Result<QuadEstimate>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!("tanh_sinh needs a finite interval, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadEstimate { value: 0.0, error: 0.0, evaluations: 0, converged: true });
    }
    let width = b - a;
    refine(
        |level| {
            let mut acc = 0.0;
            let mut n = 0;
            for (tau, _) in new_indices(level, -TANH_SINH_HALF, TANH_SINH_HALF) {
                let s = std::f64::consts::PI * tau.sinh();
                let e = (-s.abs()).exp();
                // σ(1-σ) with σ = 1/(1+e^{-s})
                let sig_small = e / (1.0 + e);
                let x = if s >= 0.0 { b - width * sig_small } else { a + width * sig_small };
                let weight = width * sig_small * (1.0 - sig_small) * std::f64::consts::PI * tau.cosh();
                if weight == 0.0 || x <= a || x >= b {
                    continue;
                }
                let fx = f(x)?;
                n += 1;
                acc += weight * fx;
            }
            Ok((acc, n))
        },
        opts,
    )
}
