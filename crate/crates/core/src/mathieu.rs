//! Generalized Mathieu series
//!
//! ```text
//! S(r) = Σ_{k≥1} 2 k^{νβ} / (r² + k^{να})^μ
//! ```
//!
//! with two-sided Hurwitz-zeta and digamma bounds for να = 1, and the
//! integral representation through 1Ψ1.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fox_wright::Neumaier;
use crate::quadrature::{exp_sinh, QuadOptions};
use crate::special::{digamma, hurwitz_zeta, ln_gamma_unchecked, riemann_zeta, EULER_GAMMA};

const MAX_TERMS: usize = 100_000_000;
const UNIT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MathieuSpec {
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
    pub nu: f64,
    pub r: f64,
}

impl MathieuSpec {
    pub fn new(alpha: f64, beta: f64, mu: f64, nu: f64, r: f64) -> Result<Self> {
        let spec = Self { alpha, beta, mu, nu, r };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta), ("mu", self.mu), ("nu", self.nu)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParams(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.r >= 0.0 && self.r.is_finite()) {
            return Err(Error::InvalidParams(format!("r must be non-negative, got {}", self.r)));
        }
        if !(self.exponent() > 1.0) {
            return Err(Error::Divergent(format!("ν(μα − β) = {} must exceed 1", self.exponent())));
        }
        Ok(())
    }

    pub fn with_r(&self, r: f64) -> Result<Self> {
        Self::new(self.alpha, self.beta, self.mu, self.nu, r)
    }

    /// s = ν(μα − β).
    pub fn exponent(&self) -> f64 {
        self.nu * (self.mu * self.alpha - self.beta)
    }

    /// w = μ/s.
    pub fn weight(&self) -> f64 {
        self.mu / self.exponent()
    }

    fn require_unit_nu_alpha(&self) -> Result<()> {
        if (self.nu * self.alpha - 1.0).abs() > UNIT_EPS {
            return Err(Error::Hypothesis(format!("bounds need να = 1, got {}", self.nu * self.alpha)));
        }
        Ok(())
    }

    fn term(&self, x: f64) -> f64 {
        let r2 = self.r * self.r;
        2.0 * (self.nu * self.beta * x.ln() - self.mu * (r2 + x.powf(self.nu * self.alpha)).ln()).exp()
    }

    /// ∫_a^∞ of the term, by the binomial series in r² a^{-να}.
    fn tail_integral(&self, a: f64) -> f64 {
        let (s, p) = (self.exponent(), self.nu * self.alpha);
        let q = self.r * self.r * a.powf(-p);
        let mut acc = 0.0;
        let mut coef = 1.0; // (μ)_j (−q)^j / j!
        for j in 0..400 {
            let jf = j as f64;
            let piece = coef * a.powf(1.0 - s) / (s - 1.0 + jf * p);
            acc += piece;
            if piece.abs() <= 1e-17 * acc.abs() {
                break;
            }
            coef *= -(self.mu + jf) * q / (jf + 1.0);
        }
        2.0 * acc
    }
}

/// Sum with a rigorous bracket [value − half_width, value + half_width].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MathieuSum {
    pub value: f64,
    pub half_width: f64,
    pub terms: usize,
}

/// Direct summation with a convexity bracket on the tail.
///
/// For a decreasing convex tail,
/// `T(K) + f(K)/2 ≤ Σ_{k≥K} f(k) ≤ f(K) + T(K + 1/2)` with `T(a) = ∫_a^∞ f`.
pub fn mathieu_sum_detailed(spec: &MathieuSpec, tol: f64) -> Result<MathieuSum> {
    spec.validate()?;
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Domain(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    let p = spec.nu * spec.alpha;
    let r2 = spec.r * spec.r;
    // the term peaks at x^{να} = βr²/(μα − β); stay well past it and past r²
    let peak = (spec.beta * r2 / (spec.mu * spec.alpha - spec.beta)).powf(1.0 / p);
    let mut k_cut = ((4.0 * peak).max((2.0 * r2).powf(1.0 / p)) + 10.0).ceil() as usize;
    let mut head = Neumaier::default();
    let mut k_done = 0usize;
    loop {
        for k in k_done + 1..k_cut {
            head.add(spec.term(k as f64));
        }
        k_done = k_cut - 1;
        let kf = k_cut as f64;
        let f_k = spec.term(kf);
        let lo = spec.tail_integral(kf) + 0.5 * f_k;
        let hi = f_k + spec.tail_integral(kf + 0.5);
        let value = head.sum() + 0.5 * (lo + hi);
        let half_width = 0.5 * (hi - lo).abs();
        if half_width <= tol * value.abs() {
            return Ok(MathieuSum { value, half_width, terms: k_cut });
        }
        if k_cut >= MAX_TERMS {
            return Err(Error::NoConvergence { terms: k_cut });
        }
        k_cut = (k_cut * 2).min(MAX_TERMS);
    }
}

pub fn mathieu_sum(spec: &MathieuSpec, tol: f64) -> Result<f64> {
    mathieu_sum_detailed(spec, tol).map(|s| s.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MathieuBounds {
    pub lower: f64,
    pub upper: f64,
    pub exponent: f64,
    pub weight: f64,
}

/// L = 2ζ(s, w r² + 1), R = 2(1 − w)ζ(s) + 2w ζ(s, r² + 1), transcribed
/// as stated; no ordering of L and R is enforced.
pub fn mathieu_bounds(spec: &MathieuSpec) -> Result<MathieuBounds> {
    spec.validate()?;
    spec.require_unit_nu_alpha()?;
    let (s, w, r2) = (spec.exponent(), spec.weight(), spec.r * spec.r);
    let lower = 2.0 * hurwitz_zeta(s, w * r2 + 1.0)?;
    let upper = 2.0 * (1.0 - w) * riemann_zeta(s)? + 2.0 * w * hurwitz_zeta(s, r2 + 1.0)?;
    Ok(MathieuBounds { lower, upper, exponent: s, weight: w })
}

/// L₁ = 2e^{−(s−1)ψ(μr²/s + 3/2)}/(s−1),
/// R₁ = 2(1 − w)e^{(s−1)γ}/(s−1) + 2w e^{−(s−1)ψ(r²+1)}/(s−1), for s > 2.
pub fn mathieu_bounds_digamma(spec: &MathieuSpec) -> Result<MathieuBounds> {
    spec.validate()?;
    spec.require_unit_nu_alpha()?;
    let (s, w, r2) = (spec.exponent(), spec.weight(), spec.r * spec.r);
    if !(s > 2.0) {
        return Err(Error::Hypothesis(format!("digamma bounds need s > 2, got {s}")));
    }
    let lower = 2.0 * (-(s - 1.0) * digamma(spec.mu * r2 / s + 1.5)?).exp() / (s - 1.0);
    let upper = 2.0 * (1.0 - w) * ((s - 1.0) * EULER_GAMMA).exp() / (s - 1.0)
        + 2.0 * w * (-(s - 1.0) * digamma(r2 + 1.0)?).exp() / (s - 1.0);
    Ok(MathieuBounds { lower, upper, exponent: s, weight: w })
}

/// 1Ψ1[(μ,1); (s,1) | −y] = Γ(μ)/Γ(s) · e^{−y} 1F1(s − μ; s; y), y ≥ 0.
///
/// The Kummer form has eventually positive terms, so large y costs terms
/// but not digits.
pub fn psi11_negative(mu: f64, s: f64, y: f64) -> Result<f64> {
    if !(y >= 0.0 && y.is_finite()) {
        return Err(Error::Domain(format!("argument must be finite and non-negative, got {y}")));
    }
    let prefactor = ln_gamma_unchecked(mu) - ln_gamma_unchecked(s);
    let a = s - mu;
    if y == 0.0 {
        return Ok(prefactor.exp());
    }
    let ln_y = y.ln();
    // terms as sign · exp(ln|term| − y + prefactor)
    let mut acc = Neumaier::default();
    let mut ln_mag = prefactor - y;
    let mut sign = 1.0;
    let mut max_seen = f64::NEG_INFINITY;
    for k in 0..crate::fox_wright::MAX_TERMS {
        let term = sign * ln_mag.exp();
        acc.add(term);
        max_seen = max_seen.max(ln_mag);
        let kf = k as f64;
        let ak = a + kf;
        if ak == 0.0 {
            break;
        }
        if kf > y && ln_mag < max_seen - 40.0 {
            break;
        }
        ln_mag += ak.abs().ln() - (s + kf).ln() + ln_y - (kf + 1.0).ln();
        if ak < 0.0 {
            sign = -sign;
        }
    }
    Ok(acc.sum())
}

/// Quadrature of (2/Γ(μ)) ∫₀^∞ x^{s−1}/(eˣ − 1) · 1Ψ1[(μ,1);(s,1) | −r²x] dx
/// against the direct sum; needs να = 1.
pub fn verify_mathieu_integral_rep(spec: &MathieuSpec, quad_tol: f64) -> Result<crate::hfunction::ResidualReport> {
    spec.validate()?;
    spec.require_unit_nu_alpha()?;
    let (s, mu, r2) = (spec.exponent(), spec.mu, spec.r * spec.r);
    let scale = 2.0 / ln_gamma_unchecked(mu).exp();
    let est = exp_sinh(
        |x| {
            if x > 745.0 {
                return Ok(0.0);
            }
            let bose = ((s - 1.0) * x.ln()).exp() / x.exp_m1();
            Ok(scale * bose * psi11_negative(mu, s, r2 * x)?)
        },
        0.0,
        QuadOptions { tol: quad_tol, max_level: 9 },
    )?;
    let mut warnings = Vec::new();
    if !est.converged {
        warnings.push(format!("quadrature stopped at error {:.3e}", est.error));
    }
    let series = mathieu_sum(spec, 1e-13)?;
    Ok(crate::hfunction::ResidualReport::new(series, est.value, warnings))
}

/// One row of an r-sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MathieuRow {
    pub r: f64,
    pub lower: f64,
    pub lower_digamma: Option<f64>,
    pub sum: f64,
    pub upper_digamma: Option<f64>,
    pub upper: f64,
}

impl MathieuRow {
    pub fn contained(&self, slack: f64) -> bool {
        self.lower - slack <= self.sum && self.sum <= self.upper + slack
    }

    pub fn contained_digamma(&self, slack: f64) -> Option<bool> {
        Some(self.lower_digamma? - slack <= self.sum && self.sum <= self.upper_digamma? + slack)
    }
}

pub fn mathieu_row(spec: &MathieuSpec, tol: f64) -> Result<MathieuRow> {
    let zeta = mathieu_bounds(spec)?;
    let dig = if spec.exponent() > 2.0 { Some(mathieu_bounds_digamma(spec)?) } else { None };
    Ok(MathieuRow {
        r: spec.r,
        lower: zeta.lower,
        lower_digamma: dig.map(|b| b.lower),
        sum: mathieu_sum(spec, tol)?,
        upper_digamma: dig.map(|b| b.upper),
        upper: zeta.upper,
    })
}

/// Rows for each r, in order; evaluated in parallel.
pub fn mathieu_sweep(spec: &MathieuSpec, rs: &[f64], tol: f64) -> Result<Vec<MathieuRow>> {
    use rayon::prelude::*;
    rs.par_iter().map(|&r| mathieu_row(&spec.with_r(r)?, tol)).collect()
}

/// CSV with header `r,L,L1,sum,R1,R`; the digamma columns are empty when s ≤ 2.
pub fn write_mathieu_csv<W: Write>(out: W, rows: &[MathieuRow], fmt: impl Fn(f64) -> String) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["r", "L", "L1", "sum", "R1", "R"]).map_err(io)?;
    for row in rows {
        let opt = |v: Option<f64>| v.map(&fmt).unwrap_or_default();
        w.write_record([
            fmt(row.r),
            fmt(row.lower),
            opt(row.lower_digamma),
            fmt(row.sum),
            opt(row.upper_digamma),
            fmt(row.upper),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use crate::fox_wright::FoxWrightParams;
    use crate::special::ZETA_2;
    use approx::assert_relative_eq;

    fn spec(alpha: f64, beta: f64, mu: f64, nu: f64, r: f64) -> MathieuSpec {
        MathieuSpec::new(alpha, beta, mu, nu, r).unwrap()
    }

    #[test]
    fn sums_match_high_precision_values() {
        // Euler–Maclaurin with 30-digit arithmetic
        let cases = [
            (spec(2.0, 1.0, 2.0, 1.0, 1.0), 0.794_233_542_759_318_9),
            (spec(1.0, 1.0, 3.0, 1.0, 1.0), 0.885_754_327_377_264_3),
            (spec(1.0, 1.0, 2.5, 1.0, 0.5), 4.002_384_743_584_358_7),
            (spec(1.0, 0.5, 2.0, 1.0, 2.0), 1.546_563_051_801_289),
        ];
        for (sp, want) in cases {
            let got = mathieu_sum_detailed(&sp, 1e-12).unwrap();
            assert_relative_eq!(got.value, want, max_relative = 1e-11);
            assert!(got.half_width <= 1e-12 * want);
        }
    }

    #[test]
    fn zero_radius_is_twice_zeta() {
        let got = mathieu_sum(&spec(1.0, 1.0, 3.0, 1.0, 0.0), 1e-13).unwrap();
        assert_relative_eq!(got, 2.0 * ZETA_2, max_relative = 1e-12);
    }

    #[test]
    fn large_radius_scaling() {
        let base = spec(2.0, 1.0, 2.0, 1.0, 10.0);
        let s10 = mathieu_sum(&base, 1e-12).unwrap();
        let s100 = mathieu_sum(&base.with_r(100.0).unwrap(), 1e-12).unwrap();
        assert_relative_eq!(s10, 0.009_983_299_758_493_015, max_relative = 1e-10);
        assert_relative_eq!(s100, 9.999_833_329_999_762e-5, max_relative = 1e-10);
        assert!(s100 < s10);
    }

    #[test]
    fn divergence_rejected() {
        assert!(matches!(MathieuSpec::new(1.0, 1.0, 2.0, 1.0, 1.0), Err(Error::Divergent(_))));
    }

    #[test]
    fn zeta_bounds_as_stated() {
        let b = mathieu_bounds(&spec(1.0, 1.0, 3.0, 1.0, 1.0)).unwrap();
        assert_eq!((b.exponent, b.weight), (2.0, 1.5));
        assert_relative_eq!(b.lower, 0.980_715_512_200_469_7, max_relative = 1e-10);
        assert_relative_eq!(b.upper, 0.289_868_133_696_452_9, max_relative = 1e-10);
        let b = mathieu_bounds(&spec(1.0, 0.5, 2.0, 1.0, 2.0)).unwrap();
        assert_relative_eq!(b.weight, 4.0 / 3.0, max_relative = 1e-15);
        assert!(matches!(mathieu_bounds(&spec(2.0, 1.0, 2.0, 1.0, 1.0)), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn collapse_at_zero_radius() {
        let sp = spec(1.0, 1.0, 4.0, 1.0, 0.0);
        let s = sp.exponent();
        let b = mathieu_bounds(&sp).unwrap();
        let exact = 2.0 * riemann_zeta(s).unwrap();
        assert_relative_eq!(b.lower, exact, max_relative = 1e-12);
        assert_relative_eq!(b.upper, exact, max_relative = 1e-12);
        let d = mathieu_bounds_digamma(&sp).unwrap();
        assert_relative_eq!(d.upper, 2.0 * ((s - 1.0) * EULER_GAMMA).exp() / (s - 1.0), max_relative = 1e-12);
        assert_relative_eq!(d.lower, 2.0 * (-(s - 1.0) * digamma(1.5).unwrap()).exp() / (s - 1.0), max_relative = 1e-14);
        assert!(mathieu_bounds_digamma(&spec(1.0, 1.0, 2.5, 1.0, 1.0)).is_err());
    }

    #[test]
    fn psi11_forms_agree() {
        for (mu, s) in [(3.0, 2.0), (2.5, 1.5), (4.0, 3.0)] {
            let params = FoxWrightParams::from_pairs(&[(mu, 1.0)], &[(s, 1.0)]).unwrap();
            // the direct alternating series loses digits beyond y ~ 2
            for y in [0.0, 0.3, 2.0] {
                let want = params.eval(-y, 1e-15).unwrap();
                assert_relative_eq!(psi11_negative(mu, s, y).unwrap(), want, max_relative = 1e-11, epsilon = 1e-14);
            }
        }
        // e^{-y} 1F1(−1; 2; y) = e^{-y}(1 − y/2)
        for y in [9.0, 40.0, 500.0] {
            let v = psi11_negative(3.0, 2.0, y).unwrap();
            assert_relative_eq!(v, 2.0 * (-y).exp() * (1.0 - 0.5 * y), max_relative = 1e-12);
        }
    }

    #[test]
    fn integral_representation() {
        for sp in [spec(1.0, 1.0, 3.0, 1.0, 1.0), spec(1.0, 1.0, 2.5, 1.0, 0.5), spec(1.0, 1.0, 3.0, 1.0, 0.0)] {
            let r = verify_mathieu_integral_rep(&sp, 1e-10).unwrap();
            assert!(r.rel_residual <= 1e-6, "{sp:?}: {r:?}");
        }
    }

    #[test]
    fn csv_layout() {
        let sp = spec(1.0, 1.0, 3.0, 1.0, 0.0);
        let rows = mathieu_sweep(&sp, &[0.0, 1.0], 1e-10).unwrap();
        let mut buf = Vec::new();
        write_mathieu_csv(&mut buf, &rows, |x| format!("{x:.2}")).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("r,L,L1,sum,R1,R\n0.00,3.29,,3.29,,3.29\n"), "{text}");
    }
}
