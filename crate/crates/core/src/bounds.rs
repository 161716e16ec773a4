//! Luke-type two-sided envelopes for pΨq[−z] and its λ-Laplace and
//! p+1Fp relatives.
//!
//! With ψ_{0,0}, ψ_{0,1} the first two moments of the H-density:
//!
//! ```text
//! ψ00 exp(−ψ01 z / ψ00)  ≤  pΨq[−z]  ≤  ψ00 − (ψ01/ρ)(1 − e^{−ρz})
//! ```

use std::io::Write;
use std::sync::OnceLock;

use serde::Serialize;

use crate::conditions::{check_h1, check_h2, check_theorem_hypotheses, DEFAULT_H1_ORDER};
use crate::error::{Error, Result};
use crate::fox_wright::{eval_pfq, FoxWrightParams, ParamPair, SeriesDomain};
use crate::hfunction::HDensity;
use crate::special::ln_gamma_unchecked;

/// Containment slack.
pub const ENVELOPE_SLACK: f64 = 1e-10;
const SERIES_TOL: f64 = 1e-15;
/// Accept a series value only when its rounding error is this small, relative.
const SERIES_ROUNDING: f64 = 1e-13;

/// Whether hypotheses are verified before the bounds are formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Checking {
    #[default]
    Checked,
    /// Skip the hypothesis checks; the envelope is annotated.
    Unchecked,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Envelope {
    pub z: f64,
    pub lower: f64,
    pub value: Option<f64>,
    pub upper: f64,
    pub contained: Option<bool>,
    pub checked: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Envelope {
    fn new(z: f64, lower: f64, upper: f64, value: Option<f64>, checking: Checking, warnings: Vec<String>) -> Self {
        let contained = value.map(|v| lower - ENVELOPE_SLACK <= v && v <= upper + ENVELOPE_SLACK);
        Self { z, lower, value, upper, contained, checked: checking == Checking::Checked, warnings }
    }

    /// min(value − lower, upper − value); negative means a violation.
    pub fn slack(&self) -> Option<f64> {
        self.value.map(|v| (v - self.lower).min(self.upper - v))
    }
}

/// Reusable evaluator for one parameter set; the H-density needed for large
/// z is built at most once.
pub struct LukeBounds {
    params: FoxWrightParams,
    checking: Checking,
    ln_psi00: f64,
    ln_psi01: f64,
    rho: f64,
    density: OnceLock<Result<HDensity>>,
}

impl LukeBounds {
    pub fn new(params: FoxWrightParams, checking: Checking) -> Result<Self> {
        if checking == Checking::Checked {
            check_h1(&params, DEFAULT_H1_ORDER)?.require("H1")?;
            check_theorem_hypotheses(&params).require("Laplace representation")?;
        }
        Ok(Self {
            ln_psi00: params.ln_psi(0.0),
            ln_psi01: params.ln_psi(1.0),
            rho: params.convergence().rho,
            params,
            checking,
            density: OnceLock::new(),
        })
    }

    pub fn params(&self) -> &FoxWrightParams {
        &self.params
    }

    fn density(&self) -> Result<&HDensity> {
        self.density
            .get_or_init(|| HDensity::from_params(self.params.clone()))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// pΨq[−z] from the series, or from the Laplace integral of the
    /// H-density when the alternating series loses too many digits.
    fn value(&self, z: f64) -> Result<(f64, Vec<String>)> {
        let series = self.params.eval_detailed(-z, SERIES_TOL);
        if let Ok(s) = &series {
            if s.rounding_error() <= SERIES_ROUNDING * s.value.abs() {
                return Ok((s.value, Vec::new()));
            }
        }
        match self.density() {
            Ok(h) => {
                let integral = h.integrate(|t| Ok((-z * t).exp()))?;
                Ok((integral.value, integral.warnings))
            }
            Err(_) => {
                let s = series?;
                Ok((s.value, vec![format!("series value has cancellation factor {:.1e}", s.cancellation())]))
            }
        }
    }

    pub fn bounds(&self, z: f64) -> Result<(f64, f64)> {
        if !(z >= 0.0 && z.is_finite()) {
            return Err(Error::Domain(format!("z must be finite and non-negative, got {z}")));
        }
        let ratio = (self.ln_psi01 - self.ln_psi00).exp();
        let lower = (self.ln_psi00 - ratio * z).exp();
        let upper = self.ln_psi00.exp() - (self.ln_psi01 - self.rho.ln()).exp() * -(-self.rho * z).exp_m1();
        Ok((lower, upper))
    }

    pub fn envelope(&self, z: f64, with_value: bool) -> Result<Envelope> {
        let (lower, upper) = self.bounds(z)?;
        let (value, warnings) = if with_value {
            let (v, w) = self.value(z)?;
            (Some(v), w)
        } else {
            (None, Vec::new())
        };
        Ok(Envelope::new(z, lower, upper, value, self.checking, warnings))
    }

    /// Envelope of p+1Ψq[(λ,1), … | −z].
    pub fn lambda_envelope(&self, lambda: f64, z: f64, with_value: bool) -> Result<Envelope> {
        if !(lambda > 0.0) {
            return Err(Error::Domain(format!("λ must be positive, got {lambda}")));
        }
        if !(z >= 0.0 && z.is_finite()) {
            return Err(Error::Domain(format!("z must be finite and non-negative, got {z}")));
        }
        let ln_g = ln_gamma_unchecked(lambda);
        let ratio = (self.ln_psi01 - self.ln_psi00).exp();
        let lower = (self.ln_psi00 + ln_g - lambda * (ratio * z).ln_1p()).exp();
        let tail = -(-lambda * (self.rho * z).ln_1p()).exp_m1();
        let upper = ln_g.exp() * (self.ln_psi00.exp() - (self.ln_psi01 - self.rho.ln()).exp() * tail);
        let (value, warnings) = if with_value {
            let (v, w) = self.lambda_value(lambda, z)?;
            (Some(v), w)
        } else {
            (None, Vec::new())
        };
        Ok(Envelope::new(z, lower, upper, value, self.checking, warnings))
    }

    fn lambda_value(&self, lambda: f64, z: f64) -> Result<(f64, Vec<String>)> {
        let outer = self.params.with_upper_prepended(ParamPair::new(lambda, 1.0))?;
        let inside = match outer.domain() {
            SeriesDomain::Entire => true,
            SeriesDomain::Disk { radius } => z < 0.5 * radius,
            SeriesDomain::Divergent => false,
        };
        if inside {
            if let Ok(s) = outer.eval_detailed(-z, SERIES_TOL) {
                if s.rounding_error() <= SERIES_ROUNDING * s.value.abs() {
                    return Ok((s.value, Vec::new()));
                }
            }
        }
        // Stieltjes form: Γ(λ) ∫ (1 + tz)^{-λ} H(t) dt/t
        let h = self.density()?;
        let integral = h.integrate(|t| Ok((-lambda * (t * z).ln_1p()).exp()))?;
        Ok((ln_gamma_unchecked(lambda).exp() * integral.value, integral.warnings))
    }
}

/// Envelope of pΨq[−z].
pub fn luke_bounds(params: &FoxWrightParams, z: f64, checking: Checking) -> Result<Envelope> {
    LukeBounds::new(params.clone(), checking)?.envelope(z, true)
}

/// Envelope of p+1Ψq[(λ,1), … | −z].
pub fn luke_bounds_lambda(params: &FoxWrightParams, lambda: f64, z: f64, checking: Checking) -> Result<Envelope> {
    LukeBounds::new(params.clone(), checking)?.lambda_envelope(lambda, z, true)
}

/// The p = q, equal-weight specialization (ρ = 1). Same formula path as
/// [`luke_bounds`].
pub fn luke_bounds_equal_weights(params: &FoxWrightParams, z: f64, checking: Checking) -> Result<Envelope> {
    if params.p() != params.q() {
        return Err(Error::InvalidParams("equal-weight form needs p = q".into()));
    }
    let w = params.upper()[0].weight;
    if params.upper().iter().chain(params.lower()).any(|p| p.weight != w) {
        return Err(Error::InvalidParams("equal-weight form needs a common weight".into()));
    }
    luke_bounds(params, z, checking)
}

/// 1/(1+θz)^σ ≤ p+1Fp[σ, α; β | −z] ≤ 1 − θ + θ/(1+z)^σ, θ = Π α_j/β_j.
pub fn pfq_luke(upper_shifts: &[f64], lower_shifts: &[f64], sigma: f64, z: f64, checking: Checking) -> Result<Envelope> {
    if !(sigma > 0.0 && z > 0.0 && z.is_finite()) {
        return Err(Error::Domain(format!("need σ > 0 and z > 0, got {sigma}, {z}")));
    }
    if checking == Checking::Checked {
        check_h2(upper_shifts, lower_shifts)?.report.require("H2")?;
    } else if upper_shifts.len() != lower_shifts.len() {
        return Err(Error::InvalidParams("p+1Fp form needs p = q".into()));
    }
    let theta: f64 = upper_shifts.iter().zip(lower_shifts).map(|(a, b)| a / b).product();
    let lower = (-sigma * (theta * z).ln_1p()).exp();
    let upper = 1.0 - theta + theta * (-sigma * z.ln_1p()).exp();
    let value = if z < 1.0 {
        let mut up = Vec::with_capacity(upper_shifts.len() + 1);
        up.push(sigma);
        up.extend_from_slice(upper_shifts);
        Some(eval_pfq(&up, lower_shifts, -z, SERIES_TOL)?)
    } else {
        None
    };
    Ok(Envelope::new(z, lower, upper, value, checking, Vec::new()))
}

/// Envelopes at every z, in grid order; points are evaluated in parallel.
pub fn luke_sweep(bounds: &LukeBounds, zs: &[f64]) -> Result<Vec<Envelope>> {
    use rayon::prelude::*;
    // build the density up front so workers do not race to construct it
    if zs.iter().any(|&z| z > 1.0) {
        let _ = bounds.density();
    }
    zs.par_iter().map(|&z| bounds.envelope(z, true)).collect()
}

/// CSV with header `z,lower,value,upper`; reals as formatted by `fmt`.
pub fn write_envelopes_csv<W: Write>(out: W, rows: &[Envelope], fmt: impl Fn(f64) -> String) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["z", "lower", "value", "upper"]).map_err(io)?;
    for r in rows {
        let value = r.value.map(&fmt).unwrap_or_default();
        w.write_record([fmt(r.z), fmt(r.lower), value, fmt(r.upper)]).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn simple() -> FoxWrightParams {
        FoxWrightParams::from_pairs(&[(1.0, 1.0)], &[(2.0, 1.0)]).unwrap()
    }

    #[test]
    fn worked_example_at_one() {
        let e = luke_bounds(&simple(), 1.0, Checking::Checked).unwrap();
        assert_relative_eq!(e.lower, (-0.5f64).exp(), max_relative = 1e-14);
        assert_relative_eq!(e.value.unwrap(), 1.0 - (-1.0f64).exp(), max_relative = 1e-14);
        assert_relative_eq!(e.upper, 1.0 - 0.5 * (1.0 - (-1.0f64).exp()), max_relative = 1e-14);
        assert_eq!(e.contained, Some(true));
    }

    #[test]
    fn collapse_at_zero_and_large_z() {
        let e = luke_bounds(&simple(), 0.0, Checking::Checked).unwrap();
        assert_eq!((e.lower, e.upper, e.value.unwrap()), (1.0, 1.0, 1.0));
        let e = luke_bounds(&simple(), 10.0, Checking::Checked).unwrap();
        assert_relative_eq!(e.value.unwrap(), (1.0 - (-10.0f64).exp()) / 10.0, max_relative = 1e-8);
        assert_eq!(e.contained, Some(true));
        let e = luke_bounds(&simple(), 20.0, Checking::Checked).unwrap();
        assert_relative_eq!(e.value.unwrap(), (1.0 - (-20.0f64).exp()) / 20.0, max_relative = 1e-8);
    }

    #[test]
    fn hypotheses_enforced_unless_unchecked() {
        let bad = FoxWrightParams::from_pairs(&[(2.0, 1.0)], &[(1.0, 1.0)]).unwrap();
        assert!(matches!(luke_bounds(&bad, 1.0, Checking::Checked), Err(Error::Hypothesis(_))));
        let e = luke_bounds(&bad, 0.5, Checking::Unchecked).unwrap();
        assert!(!e.checked);
    }

    #[test]
    fn lambda_examples() {
        let e = luke_bounds_lambda(&simple(), 1.0, 1.0, Checking::Checked).unwrap();
        assert_relative_eq!(e.lower, 2.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(e.upper, 0.75, max_relative = 1e-14);
        assert_relative_eq!(e.value.unwrap(), 2f64.ln(), max_relative = 1e-8);
        assert_eq!(e.contained, Some(true));
        let e = luke_bounds_lambda(&simple(), 2.0, 0.5, Checking::Checked).unwrap();
        assert_eq!(e.contained, Some(true), "{e:?}");
        let e = LukeBounds::new(simple(), Checking::Checked).unwrap().lambda_envelope(1.5, 1e-9, false).unwrap();
        let g = ln_gamma_unchecked(1.5).exp();
        assert!((e.lower - g).abs() < 1e-8 && (e.upper - g).abs() < 1e-8);
    }

    #[test]
    fn pfq_examples() {
        let e = pfq_luke(&[1.0], &[2.0], 1.0, 0.5, Checking::Checked).unwrap();
        assert_relative_eq!(e.lower, 0.8, max_relative = 1e-15);
        assert_relative_eq!(e.value.unwrap(), 1.5f64.ln() / 0.5, max_relative = 1e-13);
        assert_relative_eq!(e.upper, 0.5 + 0.5 / 1.5, max_relative = 1e-15);
        let e = pfq_luke(&[1.5], &[1.5], 0.7, 0.4, Checking::Checked).unwrap();
        let want = 1.4f64.powf(-0.7);
        assert_relative_eq!(e.lower, want, max_relative = 1e-14);
        assert_relative_eq!(e.upper, want, max_relative = 1e-14);
        assert_relative_eq!(e.value.unwrap(), want, max_relative = 1e-12);
        assert!(pfq_luke(&[2.0], &[1.0], 1.0, 0.5, Checking::Checked).is_err());
        assert_eq!(pfq_luke(&[1.0], &[2.0], 1.0, 3.0, Checking::Checked).unwrap().value, None);
    }

    #[test]
    fn pfq_matches_lambda_form() {
        let (up, down) = ([0.8, 1.5], [1.1, 2.5]);
        let params = FoxWrightParams::unit(&up, &down).unwrap();
        let lb = LukeBounds::new(params, Checking::Checked).unwrap();
        for (sigma, z) in [(0.5, 0.3), (1.0, 2.0), (2.5, 7.0)] {
            let e = lb.lambda_envelope(sigma, z, false).unwrap();
            let norm = down.iter().map(|&b| ln_gamma_unchecked(b)).sum::<f64>()
                - up.iter().map(|&a| ln_gamma_unchecked(a)).sum::<f64>()
                - ln_gamma_unchecked(sigma);
            let f = pfq_luke(&up, &down, sigma, z, Checking::Checked).unwrap();
            assert_relative_eq!(e.lower * norm.exp(), f.lower, max_relative = 1e-12);
            assert_relative_eq!(e.upper * norm.exp(), f.upper, max_relative = 1e-12);
        }
    }

    #[test]
    fn equal_weight_form_is_the_same_path() {
        let params = FoxWrightParams::from_pairs(&[(1.0, 0.5), (2.0, 0.5)], &[(2.0, 0.5), (3.0, 0.5)]).unwrap();
        for z in [0.3, 4.0] {
            let a = luke_bounds_equal_weights(&params, z, Checking::Checked).unwrap();
            let b = luke_bounds(&params, z, Checking::Checked).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn tight_at_origin() {
        let lb = LukeBounds::new(simple(), Checking::Checked).unwrap();
        for z in [1e-2, 1e-3, 1e-4] {
            let (lo, up) = lb.bounds(z).unwrap();
            assert!((up - lo) / (z * z) < 1.0, "z={z}");
        }
    }

    #[test]
    fn csv_layout() {
        let lb = LukeBounds::new(simple(), Checking::Checked).unwrap();
        let rows = luke_sweep(&lb, &[0.0, 1.0]).unwrap();
        let mut buf = Vec::new();
        write_envelopes_csv(&mut buf, &rows, |x| format!("{x:.3}")).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "z,lower,value,upper\n0.000,1.000,1.000,1.000\n1.000,0.607,0.632,0.684\n");
    }
}
