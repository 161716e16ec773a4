//! Parameter model and direct series evaluation of the Fox-Wright function
//!
//! ```text
//! pΨq[(α_i, A_i); (β_j, B_j) | z] = Σ_k  Π Γ(α_i + k A_i) / Π Γ(β_j + k B_j) · z^k / k!
//! ```
//!
//! The series is entire when Δ = ΣB − ΣA > −1 and converges in |z| < ∇ when
//! Δ = −1. Terms are generated by their log-space ratio and accumulated with
//! compensated summation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::ln_gamma_unchecked;

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 1_000_000;

/// Tolerance used when deciding whether ΣA = ΣB or Δ = −1.
const BALANCE_EPS: f64 = 1e-12;

/// One (shift, weight) pair: (α_i, A_i) upstairs or (β_j, B_j) downstairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "(f64, f64)", into = "(f64, f64)")]
pub struct ParamPair {
    pub shift: f64,
    pub weight: f64,
}

impl ParamPair {
    pub const fn new(shift: f64, weight: f64) -> Self {
        Self { shift, weight }
    }

    fn validate(&self, side: &str, idx: usize) -> Result<()> {
        if !(self.shift.is_finite() && self.shift > 0.0) {
            return Err(Error::InvalidParams(format!(
                "{side}[{idx}]: shift must be positive, got {}",
                self.shift
            )));
        }
        if !(self.weight.is_finite() && self.weight > 0.0) {
            return Err(Error::InvalidParams(format!(
                "{side}[{idx}]: weight must be positive, got {}",
                self.weight
            )));
        }
        Ok(())
    }
}

impl From<(f64, f64)> for ParamPair {
    fn from((shift, weight): (f64, f64)) -> Self {
        Self { shift, weight }
    }
}

impl From<ParamPair> for (f64, f64) {
    fn from(p: ParamPair) -> Self {
        (p.shift, p.weight)
    }
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    #[serde(default)]
    upper: Vec<ParamPair>,
    #[serde(default)]
    lower: Vec<ParamPair>,
}

/// Validated parameter array of pΨq. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct FoxWrightParams {
    upper: Vec<ParamPair>,
    lower: Vec<ParamPair>,
}

impl TryFrom<RawParams> for FoxWrightParams {
    type Error = Error;
    fn try_from(raw: RawParams) -> Result<Self> {
        Self::new(raw.upper, raw.lower)
    }
}

impl From<FoxWrightParams> for RawParams {
    fn from(p: FoxWrightParams) -> Self {
        RawParams { upper: p.upper, lower: p.lower }
    }
}

impl FoxWrightParams {
    pub fn new(upper: Vec<ParamPair>, lower: Vec<ParamPair>) -> Result<Self> {
        if upper.is_empty() && lower.is_empty() {
            return Err(Error::InvalidParams("both parameter lists are empty".into()));
        }
        for (i, p) in upper.iter().enumerate() {
            p.validate("upper", i)?;
        }
        for (j, p) in lower.iter().enumerate() {
            p.validate("lower", j)?;
        }
        Ok(Self { upper, lower })
    }

    pub fn from_pairs(upper: &[(f64, f64)], lower: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            upper.iter().copied().map(ParamPair::from).collect(),
            lower.iter().copied().map(ParamPair::from).collect(),
        )
    }

    /// Unit weights everywhere: the pFq case.
    pub fn unit(upper_shifts: &[f64], lower_shifts: &[f64]) -> Result<Self> {
        Self::new(
            upper_shifts.iter().map(|&s| ParamPair::new(s, 1.0)).collect(),
            lower_shifts.iter().map(|&s| ParamPair::new(s, 1.0)).collect(),
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("params always serialize")
    }

    pub fn upper(&self) -> &[ParamPair] {
        &self.upper
    }

    pub fn lower(&self) -> &[ParamPair] {
        &self.lower
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    pub fn upper_shifts(&self) -> Vec<f64> {
        self.upper.iter().map(|p| p.shift).collect()
    }

    pub fn lower_shifts(&self) -> Vec<f64> {
        self.lower.iter().map(|p| p.shift).collect()
    }

    /// Same shifts, every weight replaced by `weight`.
    pub fn with_weight(&self, weight: f64) -> Result<Self> {
        let set = |v: &[ParamPair]| v.iter().map(|p| ParamPair::new(p.shift, weight)).collect();
        Self::new(set(&self.upper), set(&self.lower))
    }

    /// Every shift replaced by `shift + n·weight`.
    ///
    /// `(-1)^n dⁿ/dzⁿ pΨq[params | -z] = pΨq[shifted(n) | -z]`.
    pub fn shifted(&self, n: u32) -> Self {
        let shift = |v: &[ParamPair]| {
            v.iter()
                .map(|p| ParamPair::new(p.shift + n as f64 * p.weight, p.weight))
                .collect()
        };
        Self { upper: shift(&self.upper), lower: shift(&self.lower) }
    }

    /// A new upper pair in front, e.g. the (σ, 1) or (λ, 1) of the
    /// Stieltjes and λ-Laplace transforms.
    pub fn with_upper_prepended(&self, pair: ParamPair) -> Result<Self> {
        let mut upper = Vec::with_capacity(self.upper.len() + 1);
        upper.push(pair);
        upper.extend_from_slice(&self.upper);
        Self::new(upper, self.lower.clone())
    }

    pub fn with_lower_appended(&self, pair: ParamPair) -> Result<Self> {
        let mut lower = self.lower.clone();
        lower.push(pair);
        Self::new(self.upper.clone(), lower)
    }

    pub fn is_balanced(&self) -> bool {
        let (a, b) = self.weight_sums();
        (a - b).abs() <= BALANCE_EPS * a.max(b).max(1.0)
    }

    fn weight_sums(&self) -> (f64, f64) {
        (
            self.upper.iter().map(|p| p.weight).sum(),
            self.lower.iter().map(|p| p.weight).sum(),
        )
    }

    pub fn convergence(&self) -> ConvergenceData {
        convergence_data(self)
    }

    pub fn domain(&self) -> SeriesDomain {
        let c = self.convergence();
        if c.delta > -1.0 + BALANCE_EPS {
            SeriesDomain::Entire
        } else if (c.delta + 1.0).abs() <= BALANCE_EPS {
            SeriesDomain::Disk { radius: c.nabla }
        } else {
            SeriesDomain::Divergent
        }
    }

    /// ln ψ_{0,k} = ln Π Γ(α_i + k A_i) − ln Π Γ(β_j + k B_j).
    pub fn ln_psi(&self, k: f64) -> f64 {
        let up: f64 = self.upper.iter().map(|p| ln_gamma_unchecked(p.shift + k * p.weight)).sum();
        let down: f64 = self.lower.iter().map(|p| ln_gamma_unchecked(p.shift + k * p.weight)).sum();
        up - down
    }

    pub fn psi_moment(&self, n: u32, m: u32) -> f64 {
        self.ln_psi((n + m) as f64).exp()
    }

    /// ln |coefficient of z^k| computed directly from log-gamma values.
    pub fn ln_coefficient_direct(&self, k: usize) -> f64 {
        self.ln_psi(k as f64) - ln_gamma_unchecked(k as f64 + 1.0)
    }

    /// Iterator over ln |coefficient of z^k| built from successive term ratios.
    pub fn ln_coefficients(&self) -> LnCoefficients<'_> {
        LnCoefficients { params: self, k: 0, current: self.ln_psi(0.0) }
    }

    pub fn eval(&self, z: f64, tol: f64) -> Result<f64> {
        self.eval_detailed(z, tol).map(|s| s.value)
    }

    /// Real-argument evaluation with cancellation diagnostics.
    pub fn eval_detailed(&self, z: f64, tol: f64) -> Result<SeriesSum> {
        check_tol(tol)?;
        if !z.is_finite() {
            return Err(Error::Domain(format!("non-finite argument {z}")));
        }
        self.check_domain(z.abs())?;
        let ln_abs_z = z.abs().ln();
        let negative = z < 0.0;
        let mut acc = Neumaier::default();
        let mut max_term: f64 = 0.0;
        let mut prev_abs = f64::NAN;
        for (k, ln_c) in self.ln_coefficients().enumerate() {
            let term_abs = if k == 0 { ln_c.exp() } else { (ln_c + k as f64 * ln_abs_z).exp() };
            let term = if negative && k % 2 == 1 { -term_abs } else { term_abs };
            acc.add(term);
            max_term = max_term.max(term_abs);
            if z == 0.0 {
                return Ok(SeriesSum::new(acc.sum(), 1, max_term));
            }
            if k >= 1 && tail_small(term_abs, prev_abs, acc.sum().abs(), max_term, tol) {
                return Ok(SeriesSum::new(acc.sum(), k + 1, max_term));
            }
            if k + 1 >= MAX_TERMS {
                break;
            }
            prev_abs = term_abs;
        }
        Err(Error::NoConvergence { terms: MAX_TERMS })
    }

    pub fn eval_complex(&self, z: Complex64, tol: f64) -> Result<Complex64> {
        check_tol(tol)?;
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::Domain(format!("non-finite argument {z}")));
        }
        let r = z.norm();
        self.check_domain(r)?;
        let (ln_r, theta) = (r.ln(), z.arg());
        let mut re = Neumaier::default();
        let mut im = Neumaier::default();
        let mut max_term: f64 = 0.0;
        let mut prev_abs = f64::NAN;
        for (k, ln_c) in self.ln_coefficients().enumerate() {
            let mag = if k == 0 { ln_c.exp() } else { (ln_c + k as f64 * ln_r).exp() };
            let phase = k as f64 * theta;
            re.add(mag * phase.cos());
            im.add(mag * phase.sin());
            max_term = max_term.max(mag);
            if r == 0.0 {
                break;
            }
            let sum_abs = re.sum().hypot(im.sum());
            if k >= 1 && tail_small(mag, prev_abs, sum_abs, max_term, tol) {
                return Ok(Complex64::new(re.sum(), im.sum()));
            }
            if k + 1 >= MAX_TERMS {
                return Err(Error::NoConvergence { terms: MAX_TERMS });
            }
            prev_abs = mag;
        }
        Ok(Complex64::new(re.sum(), im.sum()))
    }

    fn check_domain(&self, abs_z: f64) -> Result<()> {
        if abs_z == 0.0 {
            return Ok(());
        }
        match self.domain() {
            SeriesDomain::Entire => Ok(()),
            SeriesDomain::Disk { radius } if abs_z < radius => Ok(()),
            SeriesDomain::Disk { radius } => Err(Error::Divergent(format!(
                "|z| = {abs_z} is outside the disk of convergence (radius {radius})"
            ))),
            SeriesDomain::Divergent => Err(Error::Divergent(format!(
                "Δ = {} < -1: the series converges only at z = 0",
                self.convergence().delta
            ))),
        }
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol <= 1e-3 {
        Ok(())
    } else {
        Err(Error::Domain(format!("tolerance must lie in (0, 1e-3], got {tol}")))
    }
}

/// Truncation test: with the last ratio r < 1 the remainder is bounded by
/// term·r/(1 − r).
fn tail_small(term: f64, prev: f64, sum_abs: f64, max_term: f64, tol: f64) -> bool {
    if term == 0.0 {
        return true;
    }
    let r = term / prev;
    if !(r < 1.0) {
        return false;
    }
    let tail = term * r / (1.0 - r);
    let floor = 4.0 * f64::EPSILON * max_term;
    tail <= tol * sum_abs.max(floor) || tail <= floor * 1e-3
}

/// Where the defining series converges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesDomain {
    Entire,
    Disk { radius: f64 },
    Divergent,
}

/// Result of a real series summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub terms: usize,
    pub max_term: f64,
}

impl SeriesSum {
    fn new(value: f64, terms: usize, max_term: f64) -> Self {
        Self { value, terms, max_term }
    }

    /// max |term| / |sum|; large values mean digits were lost to cancellation.
    pub fn cancellation(&self) -> f64 {
        if self.value == 0.0 {
            f64::INFINITY
        } else {
            self.max_term / self.value.abs()
        }
    }

    /// Rough absolute rounding error of the sum.
    pub fn rounding_error(&self) -> f64 {
        8.0 * f64::EPSILON * self.max_term * (self.terms as f64).sqrt().max(1.0)
    }
}

/// ln Γ(x + h) − ln Γ(x) for x > 0, h > 0.
fn ln_gamma_step(x: f64, h: f64) -> f64 {
    if h == 1.0 {
        return x.ln();
    }
    if h.fract() == 0.0 && h <= 16.0 {
        let mut prod = 1.0;
        let mut y = x;
        for _ in 0..h as usize {
            prod *= y;
            y += 1.0;
        }
        return prod.ln();
    }
    if x >= 20.0 {
        // Stirling difference, free of the cancellation in lnΓ(x+h) − lnΓ(x)
        let y = x + h;
        let main = (x - 0.5) * (h / x).ln_1p() + h * y.ln() - h;
        return main + stirling_corr(y) - stirling_corr(x);
    }
    ln_gamma_unchecked(x + h) - ln_gamma_unchecked(x)
}

fn stirling_corr(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 / 1188.0))))
}

/// See [`FoxWrightParams::ln_coefficients`].
pub struct LnCoefficients<'a> {
    params: &'a FoxWrightParams,
    k: usize,
    current: f64,
}

impl Iterator for LnCoefficients<'_> {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.current;
        let k = self.k as f64;
        let up: f64 = self
            .params
            .upper
            .iter()
            .map(|p| ln_gamma_step(p.shift + k * p.weight, p.weight))
            .sum();
        let down: f64 = self
            .params
            .lower
            .iter()
            .map(|p| ln_gamma_step(p.shift + k * p.weight, p.weight))
            .sum();
        self.current += up - down - (k + 1.0).ln();
        self.k += 1;
        Some(out)
    }
}

/// Compensated (Neumaier) accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn sum(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Δ, ∇, ρ, μ, γ and the balance flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceData {
    pub delta: f64,
    pub nabla: f64,
    pub rho: f64,
    pub mu: f64,
    pub gamma_pole: f64,
    pub balanced: bool,
}

pub fn convergence_data(params: &FoxWrightParams) -> ConvergenceData {
    let (sum_a, sum_b) = params.weight_sums();
    let ln_a: f64 = params.upper.iter().map(|p| p.weight * p.weight.ln()).sum();
    let ln_b: f64 = params.lower.iter().map(|p| p.weight * p.weight.ln()).sum();
    let sum_alpha: f64 = params.upper.iter().map(|p| p.shift).sum();
    let sum_beta: f64 = params.lower.iter().map(|p| p.shift).sum();
    let gamma_pole = params
        .upper
        .iter()
        .map(|p| -(p.shift / p.weight))
        .fold(f64::NEG_INFINITY, f64::max);
    ConvergenceData {
        delta: sum_b - sum_a,
        nabla: (ln_b - ln_a).exp(),
        rho: (ln_a - ln_b).exp(),
        mu: sum_beta - sum_alpha + (params.p() as f64 - params.q() as f64) / 2.0,
        gamma_pole,
        balanced: params.is_balanced(),
    }
}

pub fn eval_series(params: &FoxWrightParams, z: f64, tol: f64) -> Result<f64> {
    params.eval(z, tol)
}

pub fn eval_series_complex(params: &FoxWrightParams, z: Complex64, tol: f64) -> Result<Complex64> {
    params.eval_complex(z, tol)
}

/// Generalized hypergeometric pFq via its Fox-Wright form with unit weights.
pub fn eval_pfq(upper_shifts: &[f64], lower_shifts: &[f64], z: f64, tol: f64) -> Result<f64> {
    let params = FoxWrightParams::unit(upper_shifts, lower_shifts)?;
    let ln_prefactor: f64 = lower_shifts.iter().map(|&b| ln_gamma_unchecked(b)).sum::<f64>()
        - upper_shifts.iter().map(|&a| ln_gamma_unchecked(a)).sum::<f64>();
    Ok(ln_prefactor.exp() * params.eval(z, tol)?)
}

pub fn psi_moment(params: &FoxWrightParams, n: u32, m: u32) -> f64 {
    params.psi_moment(n, m)
}

pub fn shift_params(params: &FoxWrightParams, n: u32) -> FoxWrightParams {
    params.shifted(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::E;

    const TOL: f64 = 1e-15;

    fn p(upper: &[(f64, f64)], lower: &[(f64, f64)]) -> FoxWrightParams {
        FoxWrightParams::from_pairs(upper, lower).unwrap()
    }

    #[test]
    fn convergence_data_examples() {
        let c = p(&[(1.0, 1.0)], &[(1.0, 1.0)]).convergence();
        assert_eq!((c.delta, c.nabla, c.rho, c.mu, c.gamma_pole, c.balanced), (0.0, 1.0, 1.0, 0.0, -1.0, true));
        let c = p(&[(1.0, 1.0)], &[(2.0, 1.0)]).convergence();
        assert_eq!((c.delta, c.nabla, c.rho, c.mu, c.gamma_pole, c.balanced), (0.0, 1.0, 1.0, 1.0, -1.0, true));
        let c = p(&[(1.0, 0.5)], &[(1.0, 1.0)]).convergence();
        assert_eq!(c.delta, 0.5);
        assert_relative_eq!(c.nabla, 2f64.sqrt(), max_relative = 1e-15);
        assert!(!c.balanced);
    }

    #[test]
    fn balanced_rho_is_reciprocal_of_nabla() {
        let c = p(&[(1.0, 2.0), (0.5, 0.5)], &[(2.0, 1.5), (3.0, 1.0)]).convergence();
        assert!(c.balanced);
        assert_relative_eq!(c.rho * c.nabla, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn eval_series_examples() {
        assert_relative_eq!(p(&[(1.0, 1.0)], &[(1.0, 1.0)]).eval(1.0, TOL).unwrap(), E, max_relative = 1e-14);
        assert_relative_eq!(
            p(&[(1.0, 1.0)], &[(2.0, 1.0)]).eval(1.0, TOL).unwrap(),
            E - 1.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(p(&[(1.0, 1.0)], &[]).eval(0.5, TOL).unwrap(), 2.0, max_relative = 1e-14);
    }

    #[test]
    fn domain_rules() {
        // Δ = -1: disk of radius ∇
        let geo = p(&[(1.0, 1.0)], &[]);
        assert_eq!(geo.domain(), SeriesDomain::Disk { radius: 1.0 });
        assert!(matches!(geo.eval(1.0, TOL), Err(Error::Divergent(_))));
        assert!(matches!(geo.eval(-1.5, TOL), Err(Error::Divergent(_))));
        // Δ < -1
        let bad = p(&[(1.0, 1.0), (1.0, 1.0)], &[]);
        assert_eq!(bad.domain(), SeriesDomain::Divergent);
        assert!(matches!(bad.eval(0.1, TOL), Err(Error::Divergent(_))));
        // Δ = 0: entire
        assert_eq!(p(&[(1.0, 1.0)], &[(2.0, 1.0)]).domain(), SeriesDomain::Entire);
        assert!(geo.eval(0.5, 1e-2).is_err());
    }

    #[test]
    fn eval_pfq_examples() {
        assert_relative_eq!(eval_pfq(&[1.0], &[1.0], 1.0, TOL).unwrap(), E, max_relative = 1e-14);
        assert_relative_eq!(
            eval_pfq(&[1.0, 1.0], &[2.0], 0.5, TOL).unwrap(),
            -(0.5f64.ln()) / 0.5,
            max_relative = 1e-13
        );
        assert!(matches!(eval_pfq(&[], &[], 1.0, TOL), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn psi_moment_and_shift_examples() {
        let params = p(&[(1.0, 1.0)], &[(2.0, 1.0)]);
        assert_relative_eq!(params.psi_moment(0, 0), 1.0, max_relative = 1e-15);
        assert_relative_eq!(params.psi_moment(0, 1), 0.5, max_relative = 1e-15);
        assert_relative_eq!(params.psi_moment(0, 2), 1.0 / 3.0, max_relative = 1e-15);
        assert_eq!(params.shifted(0), params);
        assert_eq!(params.shifted(2), p(&[(3.0, 1.0)], &[(4.0, 1.0)]));
        assert_eq!(p(&[(1.0, 0.5)], &[(2.0, 2.0)]).shifted(1), p(&[(1.5, 0.5)], &[(4.0, 2.0)]));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let text = r#"{"upper":[[1,1]],"lower":[[2,1]]}"#;
        let params = FoxWrightParams::from_json(text).unwrap();
        assert_eq!(params, p(&[(1.0, 1.0)], &[(2.0, 1.0)]));
        assert_eq!(params.to_json(), r#"{"upper":[[1.0,1.0]],"lower":[[2.0,1.0]]}"#);
        assert!(FoxWrightParams::from_json(r#"{"upper":[[1,0]],"lower":[]}"#).is_err());
        assert!(FoxWrightParams::from_json(r#"{"upper":[[-1,1]],"lower":[]}"#).is_err());
        assert!(FoxWrightParams::from_json(r#"{"upper":[],"lower":[]}"#).is_err());
    }

    #[test]
    fn value_at_zero_is_psi_00() {
        for params in [p(&[(1.3, 0.7)], &[(2.2, 1.1)]), p(&[(0.5, 2.0), (3.0, 1.0)], &[(1.0, 1.0)])] {
            assert_relative_eq!(params.eval(0.0, TOL).unwrap(), params.psi_moment(0, 0), max_relative = 1e-15);
        }
    }

    #[test]
    fn complex_eval_matches_closed_form() {
        let params = p(&[(1.0, 1.0)], &[(2.0, 1.0)]);
        for z in [Complex64::new(0.3, 2.0), Complex64::new(-4.0, 5.0), Complex64::new(2.0, -1.0)] {
            let want = (z.exp() - 1.0) / z;
            let got = params.eval_complex(z, TOL).unwrap();
            assert!((got - want).norm() <= 1e-12 * want.norm(), "z = {z}");
        }
    }

    fn central_derivative(f: &dyn Fn(f64) -> f64, x: f64, n: usize, h: f64) -> f64 {
        let mut acc = 0.0;
        let mut binom = 1.0;
        for j in 0..=n {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binom * f(x + (n as f64 / 2.0 - j as f64) * h);
            binom = binom * (n - j) as f64 / (j + 1) as f64;
        }
        acc / h.powi(n as i32)
    }

    #[test]
    fn derivative_identity_by_finite_differences() {
        let params = p(&[(1.0, 1.0)], &[(2.0, 1.0)]);
        let f = |x: f64| params.eval(-x, TOL).unwrap();
        for z in [0.5, 1.0, 2.0] {
            for n in 1..=3usize {
                let h = 1e-4 * 10f64.powi(n as i32 - 1);
                let d1 = central_derivative(&f, z, n, h);
                let d2 = central_derivative(&f, z, n, h / 2.0);
                let rich = (4.0 * d2 - d1) / 3.0;
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                let want = sign * params.shifted(n as u32).eval(-z, TOL).unwrap();
                assert!((rich - want).abs() <= 1e-6 * want.abs(), "z={z} n={n}: {rich} vs {want}");
            }
        }
    }

    #[test]
    fn pfq_matches_prefactor_times_series() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p_len = rng.gen_range(1..=3);
            let up: Vec<f64> = (0..p_len).map(|_| rng.gen_range(0.5..5.0)).collect();
            let down: Vec<f64> = (0..p_len - 1).map(|_| rng.gen_range(0.5..5.0)).collect();
            let params = FoxWrightParams::unit(&up, &down).unwrap();
            let radius = match params.domain() {
                SeriesDomain::Disk { radius } => radius,
                _ => unreachable!(),
            };
            let z = rng.gen_range(0.0..0.9) * radius;
            let pre: f64 = down.iter().map(|&b| crate::special::gamma(b).unwrap()).product::<f64>()
                / up.iter().map(|&a| crate::special::gamma(a).unwrap()).product::<f64>();
            let want = pre * params.eval(z, TOL).unwrap();
            let got = eval_pfq(&up, &down, z, TOL).unwrap();
            assert_relative_eq!(got, want, max_relative = 1e-12);
        }
    }

    #[test]
    fn recurrence_terms_match_direct_terms() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let pair = |rng: &mut ChaCha8Rng| (rng.gen_range(0.1..6.0), rng.gen_range(0.2..3.0));
            let up: Vec<_> = (0..rng.gen_range(1..=3)).map(|_| pair(&mut rng)).collect();
            let down: Vec<_> = (0..rng.gen_range(0..=3)).map(|_| pair(&mut rng)).collect();
            let params = p(&up, &down);
            for (k, ln_rec) in params.ln_coefficients().take(50).enumerate() {
                let ln_dir = params.ln_coefficient_direct(k);
                let rel = (ln_rec - ln_dir).exp_m1().abs();
                assert!(rel <= 1e-11, "k={k}: {ln_rec} vs {ln_dir}");
            }
        }
    }

    #[test]
    fn non_integer_weights_sum_correctly() {
        // 0Ψ1[(1, 1/2) | z] at z = 0.7 by brute force
        let params = p(&[], &[(1.0, 0.5)]);
        let brute: f64 = (0..60)
            .map(|k| 0.7f64.powi(k) / (crate::special::gamma(1.0 + k as f64 / 2.0).unwrap() * crate::special::gamma(k as f64 + 1.0).unwrap()))
            .sum();
        assert_relative_eq!(params.eval(0.7, TOL).unwrap(), brute, max_relative = 1e-13);
    }

    #[test]
    fn cancellation_is_reported() {
        let s = p(&[(1.0, 1.0)], &[(1.0, 1.0)]).eval_detailed(-30.0, TOL).unwrap();
        assert!(s.cancellation() > 1e10);
    }
}
