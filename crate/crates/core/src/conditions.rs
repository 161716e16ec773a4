//! Hypothesis checkers (H1ⁿ, H2), numerical complete-monotonicity and
//! log-convexity probes, Turán margins and zero counting by the argument
//! principle.
//!
//! Complete monotonicity cannot be decided numerically; the finite-difference
//! check here is a falsifier with order-scaled noise floors.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fox_wright::{FoxWrightParams, ParamPair, SeriesDomain};

const SERIES_TOL: f64 = 1e-15;
pub const DEFAULT_H1_ORDER: u32 = 16;
pub const MAX_H1_ORDER: u32 = 64;

/// One checked predicate. `margin > 0` (or `≥ 0` for non-strict ones) means
/// it holds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Predicate {
    pub name: String,
    pub margin: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub satisfied: bool,
    pub first_failure: Option<String>,
    pub details: Vec<Predicate>,
}

impl ConditionReport {
    fn from_predicates(details: Vec<Predicate>) -> Self {
        let first_failure = details.iter().find(|p| !p.holds).map(|p| p.name.clone());
        Self { satisfied: first_failure.is_none(), first_failure, details }
    }

    /// `Err(Hypothesis)` naming the first failed predicate.
    pub fn require(&self, what: &str) -> Result<()> {
        match &self.first_failure {
            None => Ok(()),
            Some(name) => Err(Error::Hypothesis(format!("{what}: {name} fails"))),
        }
    }
}

/// H1ⁿ for n = 0..=n_max: ψ_{n,2} < ψ_{n,1} and ψ_{n,1}² < ψ_{n,0} ψ_{n,2}.
///
/// Margins are in log space. The hypothesis asks for every n; the report
/// only covers n ≤ n_max.
pub fn check_h1(params: &FoxWrightParams, n_max: u32) -> Result<ConditionReport> {
    if n_max > MAX_H1_ORDER {
        return Err(Error::Domain(format!("n_max must be at most {MAX_H1_ORDER}, got {n_max}")));
    }
    let mut details = Vec::with_capacity(2 * n_max as usize + 2);
    for n in 0..=n_max {
        let n = n as f64;
        let (l0, l1, l2) = (params.ln_psi(n), params.ln_psi(n + 1.0), params.ln_psi(n + 2.0));
        let decreasing = l1 - l2;
        let convex = l0 + l2 - 2.0 * l1;
        details.push(Predicate {
            name: format!("psi[{n},2] < psi[{n},1]"),
            margin: decreasing,
            holds: decreasing > 0.0,
        });
        details.push(Predicate {
            name: format!("psi[{n},1]^2 < psi[{n},0]*psi[{n},2]"),
            margin: convex,
            holds: convex > 0.0,
        });
    }
    Ok(ConditionReport::from_predicates(details))
}

/// ΣA = ΣB and μ > 0, the setting of the Laplace representation.
pub fn check_theorem_hypotheses(params: &FoxWrightParams) -> ConditionReport {
    let conv = params.convergence();
    ConditionReport::from_predicates(vec![
        Predicate { name: "sum A = sum B".into(), margin: -conv.delta.abs(), holds: conv.balanced },
        Predicate { name: "mu > 0".into(), margin: conv.mu, holds: conv.mu > 0.0 },
    ])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct H2Report {
    #[serde(flatten)]
    pub report: ConditionReport,
    /// ψ̄ = Σ(β_j − α_j).
    pub psi_bar: f64,
    pub psi_bar_positive: bool,
}

/// H2: both shift lists nondecreasing and Σ_{j≤k} β_j ≥ Σ_{j≤k} α_j for
/// every k. ψ̄ > 0 is reported separately.
pub fn check_h2(upper_shifts: &[f64], lower_shifts: &[f64]) -> Result<H2Report> {
    if upper_shifts.len() != lower_shifts.len() {
        return Err(Error::InvalidParams(format!(
            "H2 needs equal lengths, got p = {} and q = {}",
            upper_shifts.len(),
            lower_shifts.len()
        )));
    }
    if upper_shifts.is_empty() {
        return Err(Error::InvalidParams("H2 needs p ≥ 1".into()));
    }
    if let Some(bad) = upper_shifts.iter().chain(lower_shifts).find(|x| !(**x > 0.0)) {
        return Err(Error::InvalidParams(format!("shifts must be positive, got {bad}")));
    }
    let sorted_margin = |v: &[f64]| v.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    let mut details = vec![
        {
            let m = sorted_margin(upper_shifts);
            Predicate { name: "upper shifts nondecreasing".into(), margin: m, holds: m >= 0.0 }
        },
        {
            let m = sorted_margin(lower_shifts);
            Predicate { name: "lower shifts nondecreasing".into(), margin: m, holds: m >= 0.0 }
        },
    ];
    let mut partial = 0.0;
    for (k, (a, b)) in upper_shifts.iter().zip(lower_shifts).enumerate() {
        partial += b - a;
        details.push(Predicate {
            name: format!("partial sum {}: sum beta - sum alpha >= 0", k + 1),
            margin: partial,
            holds: partial >= 0.0,
        });
    }
    Ok(H2Report { report: ConditionReport::from_predicates(details), psi_bar: partial, psi_bar_positive: partial > 0.0 })
}

pub fn check_h2_params(params: &FoxWrightParams) -> Result<H2Report> {
    check_h2(&params.upper_shifts(), &params.lower_shifts())
}

/// δⁿf(x) with step h.
fn central_difference<F>(f: &F, x: f64, n: usize, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut acc = 0.0;
    let mut binom = 1.0;
    for j in 0..=n {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binom * f(x + (n as f64 / 2.0 - j as f64) * h)?;
        binom = binom * (n - j) as f64 / (j + 1) as f64;
    }
    Ok(acc / h.powi(n as i32))
}

/// Richardson-extrapolated n-th derivative.
pub fn derivative<F>(f: &F, x: f64, n: usize, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if n == 0 {
        return f(x);
    }
    let coarse = central_difference(f, x, n, h)?;
    let fine = central_difference(f, x, n, h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

pub const MAX_CM_ORDER: usize = 8;

/// Noise floor for order n.
pub fn cm_tolerance(n: usize) -> f64 {
    1e-6 * 10f64.powi(n as i32)
}

/// Checks (−1)ⁿ f⁽ⁿ⁾ ≥ −tol_n for n ≤ max_order on `grid_n` equispaced points.
pub fn numeric_cm_check<F>(f: F, interval: (f64, f64), max_order: usize, grid_n: usize) -> Result<ConditionReport>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let (a, b) = interval;
    if !(a > 0.0 && b > a && b.is_finite()) {
        return Err(Error::Domain(format!("need 0 < a < b, got ({a}, {b})")));
    }
    if max_order > MAX_CM_ORDER {
        return Err(Error::Domain(format!("order at most {MAX_CM_ORDER}, got {max_order}")));
    }
    if grid_n < 2 {
        return Err(Error::Domain("grid needs at least 2 points".into()));
    }
    let grid: Vec<f64> = (0..grid_n).map(|i| a + (b - a) * i as f64 / (grid_n - 1) as f64).collect();
    // rows[i][n] = (−1)ⁿ f⁽ⁿ⁾(x_i)
    let rows: Vec<Vec<f64>> = grid
        .par_iter()
        .map(|&x| {
            (0..=max_order)
                .map(|n| {
                    let h = (0.01 * n as f64).min(a / n.max(1) as f64);
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    derivative(&f, x, n, h).map(|d| sign * d)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let details = (0..=max_order)
        .map(|n| {
            let (x, margin) = grid
                .iter()
                .zip(&rows)
                .map(|(&x, row)| (x, row[n]))
                .fold((a, f64::INFINITY), |acc, cur| if cur.1 < acc.1 { cur } else { acc });
            Predicate {
                name: format!("order {n}: (-1)^n f^(n) >= -1e{} (worst at x = {x})", n as i32 - 6),
                margin,
                holds: margin >= -cm_tolerance(n),
            }
        })
        .collect();
    Ok(ConditionReport::from_predicates(details))
}

/// Complete-monotonicity check of the ratio
/// p+1Ψq[(σ+1,1),(α+A,A);(β+B,B) | −z] / p+1Ψq[(σ,1),(α,A);(β,B) | −z],
/// i.e. −f'/f for the Stieltjes-type function f, on a sub-interval of (0, 1).
pub fn bernstein_ratio_cm_check(
    params: &FoxWrightParams,
    sigma: f64,
    interval: (f64, f64),
    max_order: usize,
    grid_n: usize,
) -> Result<ConditionReport> {
    if !(interval.1 < 1.0) {
        return Err(Error::Domain("the ratio is only claimed on (0, 1)".into()));
    }
    let base = params.with_upper_prepended(ParamPair::new(sigma, 1.0))?;
    let shifted = base.shifted(1);
    numeric_cm_check(
        |x| Ok(shifted.eval(-x, SERIES_TOL)? / base.eval(-x, SERIES_TOL)?),
        interval,
        max_order,
        grid_n,
    )
}

/// F(A)F(A+2) − F(A+1)² with F(w) the series with every weight set to w.
///
/// Nonnegative for z ≥ 0 under H2. For z < 0 the margin can be negative,
/// e.g. −0.0473 for shifts ([1], [2]), A = 1, z = −1; it is returned as is.
pub fn turan_in_a(unit_params: &FoxWrightParams, weight: f64, z: f64) -> Result<f64> {
    if unit_params.p() != unit_params.q() {
        return Err(Error::InvalidParams("Turán inequality in A needs p = q".into()));
    }
    if !(weight > 0.0) {
        return Err(Error::Domain(format!("weight must be positive, got {weight}")));
    }
    check_h2_params(unit_params)?.report.require("H2")?;
    let f = |w: f64| unit_params.with_weight(w)?.eval(z, SERIES_TOL);
    Ok(f(weight)? * f(weight + 2.0)? - f(weight + 1.0)?.powi(2))
}

/// Ξ(σ)Ξ(σ+2) − Ξ(σ+1)², Ξ(σ) = p+1Ψq[(σ,1), … | z].
pub fn turan_in_sigma(params: &FoxWrightParams, sigma: f64, z: f64) -> Result<f64> {
    if !(z > 0.0 && z < 1.0) {
        return Err(Error::Domain(format!("z must lie in (0, 1), got {z}")));
    }
    turan_in_sigma_unrestricted(params, sigma, z)
}

/// As [`turan_in_sigma`] without the (0, 1) restriction on z, for limits.
pub fn turan_in_sigma_unrestricted(params: &FoxWrightParams, sigma: f64, z: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(Error::Domain(format!("σ must be positive, got {sigma}")));
    }
    check_h1(params, DEFAULT_H1_ORDER)?.require("H1")?;
    let xi = |s: f64| params.with_upper_prepended(ParamPair::new(s, 1.0))?.eval(z, SERIES_TOL);
    Ok(xi(sigma)? * xi(sigma + 2.0)? - xi(sigma + 1.0)?.powi(2))
}

/// f(tx + (1−t)y) ≤ f(x)^t f(y)^{1−t} (1 + 1e-10) on every triple (x, y, t).
pub fn log_convexity_probe<F>(curve: F, triples: &[(f64, f64, f64)]) -> Result<ConditionReport>
where
    F: Fn(f64) -> Result<f64>,
{
    let ln_curve = |x: f64| -> Result<f64> {
        let v = curve(x)?;
        if v > 0.0 {
            Ok(v.ln())
        } else {
            Err(Error::Domain(format!("curve must be positive, got {v} at {x}")))
        }
    };
    let slack = 1e-10f64.ln_1p();
    let details = triples
        .iter()
        .map(|&(x, y, t)| {
            let mid = ln_curve(t * x + (1.0 - t) * y)?;
            let margin = t * ln_curve(x)? + (1.0 - t) * ln_curve(y)? + slack - mid;
            Ok(Predicate { name: format!("x={x}, y={y}, t={t}"), margin, holds: margin >= 0.0 })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConditionReport::from_predicates(details))
}

/// Axis-aligned rectangle [x0, x1] × [y0, y1] in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        if !(x0 < x1 && y0 < y1) || ![x0, x1, y0, y1].iter().all(|v| v.is_finite()) {
            return Err(Error::Domain(format!("degenerate rectangle ({x0}, {x1}, {y0}, {y1})")));
        }
        Ok(Self { x0, x1, y0, y1 })
    }

    fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.x0, self.y0),
            Complex64::new(self.x1, self.y0),
            Complex64::new(self.x1, self.y1),
            Complex64::new(self.x0, self.y1),
        ]
    }

    /// Counterclockwise boundary samples, spread in proportion to side length.
    fn boundary(&self, n: usize) -> Vec<Complex64> {
        let c = self.corners();
        let lens: Vec<f64> = (0..4).map(|i| (c[(i + 1) % 4] - c[i]).norm()).collect();
        let total: f64 = lens.iter().sum();
        let mut out = Vec::with_capacity(n + 4);
        for i in 0..4 {
            let k = ((n as f64 * lens[i] / total).round() as usize).max(1);
            for j in 0..k {
                out.push(c[i] + (c[(i + 1) % 4] - c[i]) * (j as f64 / k as f64));
            }
        }
        out
    }
}

const ZERO_GUARD: f64 = 1e-12;
const MAX_BISECTIONS: u32 = 30;

fn checked_value(params: &FoxWrightParams, z: Complex64) -> Result<Complex64> {
    let v = params.eval_complex(z, SERIES_TOL)?;
    if v.norm() < ZERO_GUARD {
        return Err(Error::ZeroOnBoundary { re: z.re, im: z.im });
    }
    Ok(v)
}

/// Phase change from a to b, bisecting while any step exceeds π/2.
fn phase_change(params: &FoxWrightParams, a: Complex64, fa: Complex64, b: Complex64, fb: Complex64, depth: u32) -> Result<f64> {
    let step = (fb / fa).arg();
    if step.abs() <= FRAC_PI_2 {
        return Ok(step);
    }
    if depth >= MAX_BISECTIONS {
        return Err(Error::Quadrature(format!("phase not resolved between {a} and {b}")));
    }
    let m = (a + b) * 0.5;
    let fm = checked_value(params, m)?;
    Ok(phase_change(params, a, fa, m, fm, depth + 1)? + phase_change(params, m, fm, b, fb, depth + 1)?)
}

/// Number of zeros of pΨq inside `rect`, by the argument principle.
pub fn count_zeros_in_rect(params: &FoxWrightParams, rect: Rect, n_boundary: usize) -> Result<i64> {
    if n_boundary < 8 {
        return Err(Error::Domain("need at least 8 boundary samples".into()));
    }
    if let SeriesDomain::Disk { radius } = params.domain() {
        if rect.corners().iter().any(|c| c.norm() >= radius) {
            return Err(Error::Divergent(format!("rectangle leaves the disk of radius {radius}")));
        }
    }
    let nodes = rect.boundary(n_boundary);
    let values: Vec<Complex64> = nodes.par_iter().map(|&z| checked_value(params, z)).collect::<Result<_>>()?;
    let mut total = 0.0;
    for i in 0..nodes.len() {
        let j = (i + 1) % nodes.len();
        total += phase_change(params, nodes[i], values[i], nodes[j], values[j], 0)?;
    }
    let winding = total / TAU;
    let rounded = winding.round();
    if (winding - rounded).abs() > 0.05 {
        return Err(Error::Quadrature(format!("winding number {winding} is not close to an integer")));
    }
    Ok(rounded as i64)
}

/// Zeros in a rectangle of the open right half-plane; H1 is checked first.
pub fn zero_count_right_half(params: &FoxWrightParams, rect: Rect, n_boundary: usize) -> Result<i64> {
    if !(rect.x0 > 0.0) {
        return Err(Error::Domain(format!("rectangle must lie in Re z > 0, got x0 = {}", rect.x0)));
    }
    check_h1(params, DEFAULT_H1_ORDER)?.require("H1")?;
    count_zeros_in_rect(params, rect, n_boundary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma;

    fn p(upper: &[(f64, f64)], lower: &[(f64, f64)]) -> FoxWrightParams {
        FoxWrightParams::from_pairs(upper, lower).unwrap()
    }

    fn simple() -> FoxWrightParams {
        p(&[(1.0, 1.0)], &[(2.0, 1.0)])
    }

    #[test]
    fn h1_examples() {
        assert!(check_h1(&simple(), 8).unwrap().satisfied);
        let r = check_h1(&p(&[(2.0, 1.0)], &[(1.0, 1.0)]), 0).unwrap();
        assert!(!r.satisfied);
        assert_eq!(r.first_failure.as_deref(), Some("psi[0,2] < psi[0,1]"));
        assert!(!check_h1(&p(&[(1.0, 1.0)], &[(1.0, 1.0)]), 0).unwrap().satisfied);
        assert!(check_h1(&simple(), 65).is_err());
    }

    #[test]
    fn h2_examples() {
        let r = check_h2(&[1.0, 2.0], &[2.0, 3.0]).unwrap();
        assert!(r.report.satisfied && r.psi_bar_positive);
        assert_eq!(r.psi_bar, 2.0);
        let r = check_h2(&[1.0], &[1.0]).unwrap();
        assert!(r.report.satisfied && !r.psi_bar_positive);
        let r = check_h2(&[2.0, 1.0], &[3.0, 3.0]).unwrap();
        assert_eq!(r.report.first_failure.as_deref(), Some("upper shifts nondecreasing"));
        assert!(matches!(check_h2(&[1.0], &[1.0, 2.0]), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn cm_examples() {
        assert!(numeric_cm_check(|x| Ok((-x).exp()), (0.5, 5.0), 6, 40).unwrap().satisfied);
        let params = simple();
        let r = numeric_cm_check(|x| params.eval(-x, 1e-15), (0.5, 5.0), 6, 40).unwrap();
        assert!(r.satisfied, "{r:?}");
        let r = numeric_cm_check(|x| Ok(x.sin()), (1.0, 4.0), 2, 40).unwrap();
        assert!(!r.satisfied);
        assert!(numeric_cm_check(Ok, (0.0, 1.0), 2, 10).is_err());
        assert!(numeric_cm_check(|_| Err(Error::Domain("x".into())), (1.0, 2.0), 2, 10).is_err());
    }

    #[test]
    fn cm_check_catches_growth() {
        // x ↦ 1/(1 + (x−2)²) is positive but not monotone
        let r = numeric_cm_check(|x| Ok(1.0 / (1.0 + (x - 2.0).powi(2))), (0.5, 4.0), 3, 30).unwrap();
        assert!(!r.satisfied);
        assert!(r.details[0].holds);
        assert!(!r.details[1].holds);
    }

    #[test]
    fn derivatives_of_exponential() {
        let f = |x: f64| Ok((2.0 * x).exp());
        for n in 1..=6 {
            let h = 0.01 * n as f64;
            let d = derivative(&f, 0.7, n, h).unwrap();
            let want = 2f64.powi(n as i32) * 1.4f64.exp();
            assert!((d - want).abs() < 1e-5 * want, "n={n}: {d} vs {want}");
        }
    }

    #[test]
    fn turan_examples() {
        assert!(turan_in_a(&simple(), 1.0, 0.0).unwrap().abs() < 1e-15);
        assert!(turan_in_a(&simple(), 1.0, 1.0).unwrap() >= 0.0);
        // log-convexity in A fails for negative z: independent high-precision
        // value of F(1)F(3) − F(2)² at z = −1
        let m = turan_in_a(&simple(), 1.0, -1.0).unwrap();
        assert!((m + 0.047_301_865_636_595_3).abs() < 1e-12, "{m}");
        let same = p(&[(1.0, 1.0)], &[(1.0, 1.0)]);
        for (a, z) in [(0.5, -2.0), (2.0, 0.5)] {
            let m = turan_in_a(&same, a, z).unwrap();
            assert!(m.abs() < 1e-12 * (2.0 * z).exp(), "{m}");
        }
        assert!(turan_in_sigma(&simple(), 1.0, 0.5).unwrap() >= 0.0);
        assert!(turan_in_sigma(&simple(), 0.5, 0.9).unwrap() >= 0.0);
        let sigma = 1.7;
        let at0 = turan_in_sigma_unrestricted(&simple(), sigma, 0.0).unwrap();
        let want = gamma(sigma).unwrap().powi(2) * sigma;
        assert!((at0 - want).abs() < 1e-13 * want);
        assert!(turan_in_sigma(&simple(), 1.0, 1.0).is_err());
    }

    #[test]
    fn log_convexity_examples() {
        let triples = [(1.2, 4.5, 0.3), (2.0, 3.0, 0.5), (1.1, 4.9, 0.9)];
        assert!(log_convexity_probe(gamma, &triples).unwrap().satisfied);
        let triples = [(0.6, 2.9, 0.5), (0.5, 1.0, 0.2), (1.5, 3.0, 0.7)];
        let curve = |a: f64| simple().with_weight(a)?.eval(0.5, 1e-15);
        assert!(log_convexity_probe(curve, &triples).unwrap().satisfied);
        let curve = |a: f64| simple().with_weight(a)?.eval(-0.5, 1e-15);
        assert!(!log_convexity_probe(curve, &triples).unwrap().satisfied);
        let r = log_convexity_probe(|x| Ok(x.exp()), &triples).unwrap();
        assert!(r.satisfied && r.details.iter().all(|d| d.margin < 1e-9));
        assert!(log_convexity_probe(|x| Ok(x - 1.0), &[(0.5, 2.0, 0.5)]).is_err());
        assert!(!log_convexity_probe(|x| Ok(x.sqrt()), &[(1.0, 4.0, 0.5)]).unwrap().satisfied);
    }

    #[test]
    fn zero_count_examples() {
        let exp = p(&[(1.0, 1.0)], &[(1.0, 1.0)]);
        // exp fails H1 (all moments equal), so use the general counter
        assert_eq!(count_zeros_in_rect(&exp, Rect::new(0.1, 5.0, -5.0, 5.0).unwrap(), 512).unwrap(), 0);
        assert!(matches!(
            zero_count_right_half(&exp, Rect::new(0.1, 5.0, -5.0, 5.0).unwrap(), 512),
            Err(Error::Hypothesis(_))
        ));
        let f = simple();
        assert_eq!(zero_count_right_half(&f, Rect::new(0.1, 5.0, -10.0, 10.0).unwrap(), 512).unwrap(), 0);
        assert_eq!(count_zeros_in_rect(&f, Rect::new(-7.0, -0.5, -1.0, 1.0).unwrap(), 512).unwrap(), 0);
        // straddling the imaginary axis picks up the zeros ±2πi
        assert_eq!(count_zeros_in_rect(&f, Rect::new(-1.0, 1.0, -7.0, 7.0).unwrap(), 512).unwrap(), 2);
        assert!(zero_count_right_half(&f, Rect::new(-1.0, 1.0, -1.0, 1.0).unwrap(), 512).is_err());
    }

    #[test]
    fn zero_on_boundary_is_reported() {
        // (e^z − 1)/z vanishes at 2πi, a corner of this rectangle
        let rect = Rect::new(0.0, 1.0, 2.0 * std::f64::consts::PI, 8.0).unwrap();
        let err = count_zeros_in_rect(&simple(), rect, 64);
        assert!(matches!(err, Err(Error::ZeroOnBoundary { .. })), "{err:?}");
    }

    #[test]
    fn bernstein_ratio_preset() {
        let r = bernstein_ratio_cm_check(&simple(), 0.5, (0.05, 0.95), 4, 20).unwrap();
        assert!(r.satisfied, "{r:?}");
    }
}
