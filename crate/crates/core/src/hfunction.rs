//! The H-density `H^{p,0}_{q,p}` by numerical Mellin inversion, and
//! quadrature checks of the integral representations built on it.
//!
//! For balanced parameters the Mellin integrand
//!
//! ```text
//! G(s) = Π Γ(A_i s + α_i) / Π Γ(B_j s + β_j)
//! ```
//!
//! behaves like `K ρ^s s^{-μ}` on vertical lines, so a plain trapezoid sum
//! over `Re s = c` converges only like `T^{-μ}`. We subtract a Stirling-based
//! model `M(s) = K ρ^s Σ c_m (s + a)^{-μ-m}` whose inverse transform is
//! known in closed form and integrate only the remainder `G − M`, which
//! decays like `|s|^{-μ-M-1}`.
//!
//! Densities are evaluated in the log variable `v = ln(ρ/t)`, which also
//! turns every `dt/t` integral into a plain `dv` integral over (0, ∞).

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fox_wright::{FoxWrightParams, ParamPair};
use crate::quadrature::{exp_sinh, QuadOptions};
use crate::special::{bernoulli_poly, ln_gamma_complex_unchecked, ln_gamma_unchecked};

/// Order of the subtracted asymptotic model.
const MODEL_ORDER: usize = 8;
/// Largest tolerated amplification e^{(c-γ)v} of contour-sum rounding.
const MAX_GROWTH_EXP: f64 = 15.0;
/// Beyond γ·v < −this the density is below the smallest normal double.
const UNDERFLOW_EXP: f64 = 745.0;
const TRUNCATION_WARN: f64 = 1e-6;
const ROUNDOFF_WARN: f64 = 1e-8;

/// Vertical line `Re s = offset`, truncated to `|Im s| ≤ half_length` and
/// sampled with trapezoid step `step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContourSpec {
    pub offset: f64,
    pub half_length: f64,
    pub step: f64,
}

impl ContourSpec {
    pub fn new(offset: f64, half_length: f64, step: f64) -> Result<Self> {
        if !(half_length > 0.0 && half_length.is_finite() && step > 0.0 && step.is_finite()) {
            return Err(Error::Domain(format!(
                "contour needs positive half length and step, got T = {half_length}, h = {step}"
            )));
        }
        let n = half_length / step;
        if (n - n.round()).abs() > 1e-9 * n.max(1.0) {
            return Err(Error::Domain(format!("half length {half_length} is not a multiple of step {step}")));
        }
        if !offset.is_finite() {
            return Err(Error::Domain(format!("non-finite contour offset {offset}")));
        }
        Ok(Self { offset, half_length, step })
    }

    /// c = max(γ + 1, 1), T = 200, h = 0.05.
    pub fn default_for(params: &FoxWrightParams) -> Self {
        let gamma = params.convergence().gamma_pole;
        Self { offset: (gamma + 1.0).max(1.0), half_length: 200.0, step: 0.05 }
    }

    /// Number of nodes on the line.
    pub fn points(&self) -> usize {
        (self.half_length / self.step).round() as usize * 2
    }
}

/// Balanced parameters with μ > 0 and a contour to the right of every pole.
#[derive(Debug, Clone, PartialEq)]
pub struct HDensitySpec {
    params: FoxWrightParams,
    contour: ContourSpec,
}

impl HDensitySpec {
    pub fn new(params: FoxWrightParams, contour: ContourSpec) -> Result<Self> {
        let conv = params.convergence();
        if !conv.balanced {
            return Err(Error::Hypothesis(format!(
                "H-density needs ΣA = ΣB, got Δ = {}",
                conv.delta
            )));
        }
        if !(conv.mu > 0.0) {
            return Err(Error::Hypothesis(format!("H-density needs μ > 0, got μ = {}", conv.mu)));
        }
        if !(contour.offset > conv.gamma_pole) {
            return Err(Error::Pole(format!(
                "contour offset {} must exceed the rightmost pole {}",
                contour.offset, conv.gamma_pole
            )));
        }
        Ok(Self { params, contour })
    }

    pub fn with_default_contour(params: FoxWrightParams) -> Result<Self> {
        let contour = ContourSpec::default_for(&params);
        Self::new(params, contour)
    }

    pub fn params(&self) -> &FoxWrightParams {
        &self.params
    }

    pub fn contour(&self) -> ContourSpec {
        self.contour
    }
}

/// Complex ln Γ valid for any non-pole argument; shifts Re z above 1/2 first.
fn ln_gamma_any(z: Complex64) -> Complex64 {
    if z.re >= 0.5 {
        return ln_gamma_complex_unchecked(z);
    }
    let n = (0.5 - z.re).ceil() as usize;
    let mut prod = Complex64::new(1.0, 0.0);
    let mut w = z;
    for _ in 0..n {
        prod *= w;
        w += 1.0;
    }
    ln_gamma_complex_unchecked(w) - prod.ln()
}

fn ln_mellin(params: &FoxWrightParams, s: Complex64) -> Complex64 {
    let term = |p: &ParamPair| ln_gamma_any(s * p.weight + p.shift);
    params.upper().iter().map(term).sum::<Complex64>() - params.lower().iter().map(term).sum::<Complex64>()
}

/// G(s) = Π Γ(A s + α) / Π Γ(B s + β), for Re s > γ.
pub fn mellin_integrand(params: &FoxWrightParams, s: Complex64) -> Result<Complex64> {
    let gamma = params.convergence().gamma_pole;
    if !(s.re > gamma) {
        return Err(Error::Pole(format!("Re s = {} is not right of the pole at {gamma}", s.re)));
    }
    Ok(ln_mellin(params, s).exp())
}

/// Asymptotic model of G: K ρ^s Σ_m c_m (s + a)^{-μ-m}.
#[derive(Debug, Clone)]
struct Model {
    ln_k: f64,
    mu: f64,
    shift: f64,
    coeffs: Vec<f64>,
}

impl Model {
    fn new(params: &FoxWrightParams, order: usize) -> Self {
        let conv = params.convergence();
        let half_ln_2pi = 0.5 * TAU.ln();
        let ln_k = (params.p() as f64 - params.q() as f64) * half_ln_2pi
            + params.upper().iter().map(|p| (p.shift - 0.5) * p.weight.ln()).sum::<f64>()
            - params.lower().iter().map(|p| (p.shift - 0.5) * p.weight.ln()).sum::<f64>();
        // shift past every Stirling scale α/A so that the w-expansion is tame
        let shift = 1.0
            + params
                .upper()
                .iter()
                .chain(params.lower())
                .map(|p| p.shift / p.weight)
                .fold(0.0, f64::max);
        let coeffs = model_coefficients(params, conv.mu, shift, order);
        Self { ln_k, mu: conv.mu, shift, coeffs }
    }

    /// M(s) ρ^{-s}.
    fn eval_scaled(&self, s: Complex64) -> Complex64 {
        let w_ln = -(s + self.shift).ln();
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in self.coeffs.iter().enumerate() {
            acc += c * ((self.mu + m as f64) * w_ln).exp();
        }
        acc * self.ln_k.exp()
    }

    /// Closed-form inverse Mellin transform of M at t = ρ e^{-v}.
    fn inverse(&self, v: f64) -> f64 {
        let ln_v = v.ln();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| {
                let nu = self.mu + m as f64;
                c * (self.ln_k - self.shift * v + (nu - 1.0) * ln_v - ln_gamma_unchecked(nu)).exp()
            })
            .sum()
    }
}

/// Coefficients c_m of G(s) ρ^{-s} / K = Σ c_m w^{μ+m} + O(w^{μ+order+1})
/// with w = 1/(s + a).
fn model_coefficients(params: &FoxWrightParams, mu: f64, a: f64, order: usize) -> Vec<f64> {
    let len = order + 1;
    // Stirling corrections: ln G − [s ln ρ − μ ln s + ln K] = Σ d_n s^{-n}
    let d: Vec<f64> = (1..len)
        .map(|n| {
            let term = |p: &ParamPair| {
                let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
                sign * bernoulli_poly(n + 1, p.shift) / ((n * (n + 1)) as f64 * p.weight.powi(n as i32))
            };
            params.upper().iter().map(term).sum::<f64>() - params.lower().iter().map(term).sum::<f64>()
        })
        .collect();
    // 1/s = Σ a^j w^{j+1}
    let inv_s: Vec<f64> = (0..len).map(|j| if j == 0 { 0.0 } else { a.powi(j as i32 - 1) }).collect();
    let mul = |x: &[f64], y: &[f64]| -> Vec<f64> {
        (0..len).map(|n| (0..=n).map(|k| x[k] * y[n - k]).sum()).collect()
    };
    let mut exponent = vec![0.0; len];
    let mut power = inv_s.clone();
    for dn in &d {
        for (e, p) in exponent.iter_mut().zip(&power) {
            *e += dn * p;
        }
        power = mul(&power, &inv_s);
    }
    let mut expo = vec![0.0; len];
    expo[0] = 1.0;
    for n in 1..len {
        expo[n] = (1..=n).map(|k| k as f64 * exponent[k] * expo[n - k]).sum::<f64>() / n as f64;
    }
    // s^{-μ} = w^μ (1 − a w)^{-μ}
    let mut binom = vec![0.0; len];
    binom[0] = 1.0;
    for j in 1..len {
        binom[j] = binom[j - 1] * (mu + j as f64 - 1.0) * a / j as f64;
    }
    mul(&binom, &expo)
}

/// Remainder samples on one vertical line, pre-multiplied by trapezoid weights.
#[derive(Debug)]
struct Level {
    offset: f64,
    step: f64,
    u0: f64,
    samples: Vec<Complex64>,
    abs_sum: f64,
    /// |Q| at the truncation points.
    edge: f64,
}

impl Level {
    fn build(params: &FoxWrightParams, model: &Model, offset: f64, half_length: f64, step: f64) -> Self {
        let n = (half_length / step).round() as usize * 2;
        let ln_rho = params.convergence().rho.ln();
        let samples: Vec<Complex64> = (0..=n)
            .into_par_iter()
            .map(|j| {
                let s = Complex64::new(offset, -half_length + j as f64 * step);
                let g = (ln_mellin(params, s) - s * ln_rho).exp();
                let weight = if j == 0 || j == n { 0.5 } else { 1.0 };
                (g - model.eval_scaled(s)) * (weight * step / TAU)
            })
            .collect();
        let abs_sum = samples.iter().map(|q| q.norm()).sum();
        let edge = samples[0].norm().max(samples[n].norm()) * 2.0 * TAU / step;
        Self { offset, step, u0: -half_length, samples, abs_sum, edge }
    }

    /// (1/2π) ∫ Q(c + iu) e^{(c+iu) v} du by the trapezoid rule.
    fn sum(&self, v: f64) -> Complex64 {
        let rot = Complex64::from_polar(1.0, self.step * v);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut phase = Complex64::new(0.0, 0.0);
        for (j, q) in self.samples.iter().enumerate() {
            if j % 64 == 0 {
                phase = Complex64::from_polar(1.0, (self.u0 + j as f64 * self.step) * v);
            } else {
                phase *= rot;
            }
            acc += q * phase;
        }
        acc * (self.offset * v).exp()
    }
}

/// One density value with its error indicators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityValue {
    pub value: f64,
    /// Imaginary part of the inversion integral; zero in exact arithmetic.
    pub imag: f64,
    pub truncation_error: f64,
    pub roundoff_error: f64,
}

impl DensityValue {
    const ZERO: Self = Self { value: 0.0, imag: 0.0, truncation_error: 0.0, roundoff_error: 0.0 };

    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.truncation_error > TRUNCATION_WARN * self.value.abs().max(1.0) {
            out.push(format!("contour truncation error estimate {:.3e}", self.truncation_error));
        }
        if self.roundoff_error > ROUNDOFF_WARN {
            out.push(format!("contour rounding error estimate {:.3e}", self.roundoff_error));
        }
        out
    }
}

/// Quadrature result with the union of density warnings met on the way.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub warnings: Vec<String>,
}

/// A ready-to-evaluate H-density. Contour samples are computed lazily, once
/// per line, and shared between evaluations.
pub struct HDensity {
    spec: HDensitySpec,
    rho: f64,
    gamma: f64,
    model: Model,
    offsets: Vec<(f64, f64)>,
    levels: Vec<OnceLock<Level>>,
}

impl std::fmt::Debug for HDensity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HDensity").field("spec", &self.spec).finish_non_exhaustive()
    }
}

impl HDensity {
    pub fn new(spec: HDensitySpec) -> Self {
        let conv = spec.params.convergence();
        let model = Model::new(&spec.params, MODEL_ORDER);
        let base = spec.contour;
        // the given line first, then lines ever closer to the pole for small t
        let mut offsets = vec![(base.offset, base.step)];
        let mut d = 0.5;
        while d >= 1.0 / 32.0 {
            if d < base.offset - conv.gamma_pole {
                offsets.push((conv.gamma_pole + d, base.step.min(0.1 * d)));
            }
            d *= 0.5;
        }
        let levels = offsets.iter().map(|_| OnceLock::new()).collect();
        Self { spec, rho: conv.rho, gamma: conv.gamma_pole, model, offsets, levels }
    }

    pub fn from_params(params: FoxWrightParams) -> Result<Self> {
        HDensitySpec::with_default_contour(params).map(Self::new)
    }

    pub fn spec(&self) -> &HDensitySpec {
        &self.spec
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    fn level(&self, k: usize) -> &Level {
        self.levels[k].get_or_init(|| {
            let (offset, step) = self.offsets[k];
            Level::build(&self.spec.params, &self.model, offset, self.spec.contour.half_length, step)
        })
    }

    /// Density at t = ρ e^{-v}.
    pub fn at_log(&self, v: f64) -> Result<DensityValue> {
        if v.is_nan() {
            return Err(Error::Domain("NaN density argument".into()));
        }
        if v <= 0.0 || self.gamma * v < -UNDERFLOW_EXP {
            return Ok(DensityValue::ZERO);
        }
        let k = (0..self.offsets.len())
            .find(|&k| (self.offsets[k].0 - self.gamma) * v <= MAX_GROWTH_EXP)
            .unwrap_or(self.offsets.len() - 1);
        let level = self.level(k);
        let growth = (level.offset * v).exp();
        if !growth.is_finite() {
            return Err(Error::Quadrature(format!("contour sum overflows at t = ρ·e^-{v}")));
        }
        let rem = level.sum(v);
        let model = self.model.inverse(v);
        let mu_m = self.model.mu + MODEL_ORDER as f64;
        Ok(DensityValue {
            value: model + rem.re,
            imag: rem.im,
            truncation_error: level.edge * growth * self.spec.contour.half_length / (PI * mu_m),
            roundoff_error: 8.0 * f64::EPSILON * (level.abs_sum * growth + model.abs()),
        })
    }

    pub fn at(&self, t: f64) -> Result<DensityValue> {
        if !(t > 0.0) {
            return Err(Error::Domain(format!("density argument must be positive, got {t}")));
        }
        if t >= self.rho {
            return Ok(DensityValue::ZERO);
        }
        self.at_log((self.rho / t).ln())
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        self.at(t).map(|d| d.value)
    }

    /// ∫₀^ρ g(t) H(t) dt/t, with `g` receiving t.
    pub fn integrate<F>(&self, mut g: F) -> Result<Integral>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let mut warnings = Vec::new();
        let est = exp_sinh(
            |v| {
                let d = self.at_log(v)?;
                if d.value == 0.0 {
                    return Ok(0.0);
                }
                for w in d.warnings() {
                    if !warnings.contains(&w) && warnings.len() < 8 {
                        warnings.push(w);
                    }
                }
                Ok(g(self.rho * (-v).exp())? * d.value)
            },
            0.0,
            QuadOptions { tol: 1e-10, max_level: 8 },
        )?;
        if !est.converged {
            warnings.push(format!("quadrature stopped at error {:.3e}", est.error));
        }
        Ok(Integral { value: est.value, error: est.error, warnings })
    }

    /// ∫₀^ρ t^k H(t) dt/t, which should equal ψ_{0,k}.
    pub fn moment(&self, k: u32) -> Result<Integral> {
        self.integrate(|t| Ok(t.powi(k as i32)))
    }
}

/// H-density at t with the given spec. Builds the contour samples each
/// call; use [`HDensity`] for repeated evaluation.
pub fn h_density(spec: &HDensitySpec, t: f64) -> Result<DensityValue> {
    HDensity::new(spec.clone()).at(t)
}

/// Series value against integral value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub series: f64,
    pub integral: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub warnings: Vec<String>,
}

impl ResidualReport {
    pub fn new(series: f64, integral: f64, warnings: Vec<String>) -> Self {
        let abs_residual = (series - integral).abs();
        let scale = series.abs().max(integral.abs());
        let rel_residual = if scale == 0.0 { 0.0 } else { abs_residual / scale };
        Self { series, integral, abs_residual, rel_residual, warnings }
    }
}

const SERIES_TOL: f64 = 1e-15;

/// pΨq[z] against ∫₀^ρ e^{zt} H(t) dt/t.
pub fn verify_laplace_rep(density: &HDensity, z: f64) -> Result<ResidualReport> {
    let series = density.spec.params.eval(z, SERIES_TOL)?;
    let integral = density.integrate(|t| Ok((z * t).exp()))?;
    Ok(ResidualReport::new(series, integral.value, integral.warnings))
}

/// p+1Ψq[(σ,1), … | −z] against Γ(σ) ∫₀^ρ (1 + tz)^{-σ} H(t) dt/t.
pub fn verify_stieltjes_rep(density: &HDensity, sigma: f64, z: f64) -> Result<ResidualReport> {
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!("σ must be positive, got {sigma}")));
    }
    if !(z >= 0.0) {
        return Err(Error::Domain(format!("z must be non-negative, got {z}")));
    }
    let outer = density.spec.params.with_upper_prepended(ParamPair::new(sigma, 1.0))?;
    let series = outer.eval(-z, SERIES_TOL)?;
    let integral = density.integrate(|t| Ok((-sigma * (t * z).ln_1p()).exp()))?;
    let g = ln_gamma_unchecked(sigma).exp();
    Ok(ResidualReport::new(series, g * integral.value, integral.warnings))
}

/// Doubling scan for a point past which `f` (positive, eventually
/// decreasing) stays below `floor`.
fn decay_cutoff<F>(mut f: F, floor: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut t = 1.0;
    let mut prev = f64::INFINITY;
    for _ in 0..60 {
        let val = f(t)?;
        if val < floor && val <= prev {
            return Ok(t);
        }
        prev = val;
        t *= 2.0;
    }
    Err(Error::Quadrature("integrand does not decay".into()))
}

/// pΨq[1/z] against ψ_{0,0} + ∫₀^∞ e^{-zt} W(t) dt, where W has shifts
/// α + A, β + B and the extra lower pair (2, 1).
pub fn verify_reciprocal_laplace(params: &FoxWrightParams, z: f64) -> Result<ResidualReport> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("z must be positive, got {z}")));
    }
    let series = params.eval(1.0 / z, SERIES_TOL)?;
    let inner = params.shifted(1).with_lower_appended(ParamPair::new(2.0, 1.0))?;
    let kernel = |t: f64| -> Result<f64> { Ok((-z * t).exp() * inner.eval(t, SERIES_TOL)?) };
    let scale = kernel(0.0)?.max(f64::MIN_POSITIVE);
    let cutoff = decay_cutoff(&kernel, 1e-14 * scale)?;
    let est = exp_sinh(|t| if t > cutoff { Ok(0.0) } else { kernel(t) }, 0.0, QuadOptions::default())?;
    let mut warnings = Vec::new();
    if !est.converged {
        warnings.push(format!("quadrature stopped at error {:.3e}", est.error));
    }
    Ok(ResidualReport::new(series, params.psi_moment(0, 0) + est.value, warnings))
}

/// ∫₀^∞ e^{-zt} t^{λ-1} pΨq[−ωt] dt.
pub fn lambda_transform_integral(params: &FoxWrightParams, lambda: f64, omega: f64, z: f64) -> Result<Integral> {
    if !(lambda > 0.0 && z > 0.0 && omega >= 0.0) {
        return Err(Error::Domain(format!("need λ > 0, z > 0, ω ≥ 0; got {lambda}, {z}, {omega}")));
    }
    if omega > 0.0 && params.domain() != crate::fox_wright::SeriesDomain::Entire {
        return Err(Error::Divergent("the inner function must be entire (Δ > −1)".into()));
    }
    // |pΨq[−x]| ≤ pΨq[x] bounds the integrand for the cutoff scan
    let envelope = |t: f64| -> Result<f64> {
        Ok((-z * t + (lambda - 1.0) * t.ln()).exp() * params.eval(omega * t, SERIES_TOL)?)
    };
    let peak = envelope((lambda - 1.0).max(0.0) / z + 1e-3)?.max(f64::MIN_POSITIVE);
    let cutoff = decay_cutoff(&envelope, 1e-16 * peak)?;
    let est = exp_sinh(
        |t| {
            if t > cutoff {
                return Ok(0.0);
            }
            Ok((-z * t + (lambda - 1.0) * t.ln()).exp() * params.eval(-omega * t, SERIES_TOL)?)
        },
        0.0,
        QuadOptions::default(),
    )?;
    let mut warnings = Vec::new();
    if !est.converged {
        warnings.push(format!("quadrature stopped at error {:.3e}", est.error));
    }
    Ok(Integral { value: est.value, error: est.error, warnings })
}

/// z^{-λ} p+1Ψq[(λ,1), … | −ω/z] against the λ-Laplace integral.
pub fn verify_lambda_transform(params: &FoxWrightParams, lambda: f64, omega: f64, z: f64) -> Result<ResidualReport> {
    let outer = params.with_upper_prepended(ParamPair::new(lambda, 1.0))?;
    let series = z.powf(-lambda) * outer.eval(-omega / z, SERIES_TOL)?;
    let integral = lambda_transform_integral(params, lambda, omega, z)?;
    Ok(ResidualReport::new(series, integral.value, integral.warnings))
}

/// H-density with all weights A at t against (1/A)·(unit-weight density at
/// t^{1/A}).
pub fn meijer_g_reduction_check(params: &FoxWrightParams, t: f64) -> Result<ResidualReport> {
    let weight = params.upper().first().or(params.lower().first()).map(|p| p.weight).unwrap_or(1.0);
    let uniform = params
        .upper()
        .iter()
        .chain(params.lower())
        .all(|p| (p.weight - weight).abs() <= 1e-14 * weight);
    if !uniform {
        return Err(Error::InvalidParams("all weights must be equal".into()));
    }
    let weighted = HDensity::from_params(params.clone())?;
    let unit = HDensity::from_params(params.with_weight(1.0)?)?;
    let lhs = weighted.at(t)?;
    let rhs = unit.at(t.powf(1.0 / weight))?;
    let mut warnings = lhs.warnings();
    warnings.extend(rhs.warnings());
    Ok(ResidualReport::new(lhs.value, rhs.value / weight, warnings))
}
