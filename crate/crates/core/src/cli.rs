//! Command-line front end. The binary only calls [`run`].
//!
//! Exit statuses: 0 success, 1 hypothesis or condition failure (including
//! violated envelopes and residuals above `--max-residual`), 2 input error,
//! 3 numerical failure. Errors are also written to stderr as JSON.

use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bounds::{self, Checking, Envelope, LukeBounds};
use crate::conditions::{self, ConditionReport, Rect, DEFAULT_H1_ORDER};
use crate::error::{Error, ErrorKind, Result};
use crate::fox_wright::{FoxWrightParams, SeriesDomain};
use crate::hfunction::{self, HDensity, ResidualReport};
use crate::mathieu::{self, MathieuRow, MathieuSpec};
use crate::report::{self, Format, Report, Table};

/// Turán margins below this count as violations.
pub const TURAN_SLACK: f64 = 1e-10;
/// Containment slack for Mathieu sweeps.
pub const MATHIEU_SLACK: f64 = 1e-8;
/// Largest accepted `--tol`.
pub const MAX_TOL: f64 = 1e-2;
/// The series kernel refuses tolerances looser than this; a looser request is
/// served with this one.
const SERIES_TOL_CAP: f64 = 1e-3;
pub const THREADS_ENV: &str = "FOXWRIGHT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "foxwright", version, about = "Fox-Wright functions, H-densities, bounds and Mathieu series")]
pub struct RunConfig {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Relative tolerance, in (0, 1e-2].
    #[arg(long, default_value_t = 1e-10, value_parser = parse_tol, global = true)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the series at z.
    Eval {
        #[command(flatten)]
        params: ParamsArg,
        #[command(flatten)]
        at: PointArg,
    },
    /// Convergence data: Δ, ∇, ρ, μ, the rightmost pole and the domain.
    Convergence {
        #[command(flatten)]
        params: ParamsArg,
    },
    /// Hypothesis checks and numerical falsifiers.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Luke-type envelopes.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Generalized Mathieu series with its zeta and digamma bounds.
    Mathieu(MathieuArgs),
    /// Integral representations against the series.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Argument-principle zero count in a rectangle.
    Zeros {
        #[command(flatten)]
        params: ParamsArg,
        /// x0:x1:y0:y1
        #[arg(long, allow_hyphen_values = true)]
        rect: RectArg,
        #[arg(long, default_value_t = 512)]
        n_boundary: usize,
        /// Require the rectangle in Re z > 0 and check H1 first.
        #[arg(long)]
        right_half: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    H1 {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long, default_value_t = DEFAULT_H1_ORDER)]
        nmax: u32,
    },
    H2 {
        #[command(flatten)]
        params: ParamsArg,
    },
    /// Balanced with μ > 0.
    Hypotheses {
        #[command(flatten)]
        params: ParamsArg,
    },
    /// Complete monotonicity of x ↦ Ψ(−x) by finite differences.
    Cm {
        #[command(flatten)]
        params: ParamsArg,
        /// a:b
        #[arg(long, default_value = "0.5:4", allow_hyphen_values = true)]
        interval: IntervalArg,
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[arg(long, default_value_t = 25)]
        grid: usize,
    },
    /// Ξ(σ)Ξ(σ+2) − Ξ(σ+1)² with Ξ(σ) the (σ,1)-prepended series.
    TuranSigma {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0.5,1,2")]
        sigma: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0.1,0.5,0.9")]
        z: Vec<f64>,
    },
    /// F(A)F(A+2) − F(A+1)² with every weight set to A.
    TuranA {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0.5,1,2")]
        weight: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0.5")]
        z: Vec<f64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum BoundsCommand {
    Luke {
        #[command(flatten)]
        params: ParamsArg,
        #[command(flatten)]
        at: PointArg,
        #[arg(long)]
        unchecked: bool,
    },
    Lambda {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long)]
        lambda: f64,
        #[command(flatten)]
        at: PointArg,
        #[arg(long)]
        unchecked: bool,
    },
    /// The p+1Fp form with θ = ∏α/β.
    Pfq {
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        upper: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        lower: Vec<f64>,
        #[arg(long)]
        sigma: f64,
        #[command(flatten)]
        at: PointArg,
        #[arg(long)]
        unchecked: bool,
    },
}

#[derive(Debug, Args)]
pub struct MathieuArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long)]
    pub mu: f64,
    #[arg(long)]
    pub nu: f64,
    #[arg(long)]
    pub r: Option<f64>,
    /// r:lin|log:start:stop:points
    #[arg(long, conflicts_with = "r", allow_hyphen_values = true)]
    pub sweep: Option<Sweep>,
    /// Only the sum; no bounds (allowed when να ≠ 1).
    #[arg(long)]
    pub sum_only: bool,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    Laplace {
        #[command(flatten)]
        params: ParamsArg,
        #[command(flatten)]
        at: PointArg,
        #[command(flatten)]
        residual: ResidualArg,
    },
    Stieltjes {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long)]
        sigma: f64,
        #[command(flatten)]
        at: PointArg,
        #[command(flatten)]
        residual: ResidualArg,
    },
    Reciprocal {
        #[command(flatten)]
        params: ParamsArg,
        #[command(flatten)]
        at: PointArg,
        #[command(flatten)]
        residual: ResidualArg,
    },
    Lambda {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 1.0)]
        omega: f64,
        #[command(flatten)]
        at: PointArg,
        #[command(flatten)]
        residual: ResidualArg,
    },
    /// Meijer-G reduction of the density at t (unit weights only).
    Meijer {
        #[command(flatten)]
        params: ParamsArg,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long, conflicts_with = "t", allow_hyphen_values = true)]
        sweep: Option<Sweep>,
        #[command(flatten)]
        residual: ResidualArg,
    },
    MathieuIntegral {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        mu: f64,
        #[arg(long)]
        nu: f64,
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, conflicts_with = "r", allow_hyphen_values = true)]
        sweep: Option<Sweep>,
        #[command(flatten)]
        residual: ResidualArg,
    },
}

/// Inline JSON (`{"upper": [[a, A], ...], "lower": [...]}`) or a file path.
#[derive(Debug, Args)]
pub struct ParamsArg {
    #[arg(long = "params")]
    pub source: String,
}

impl ParamsArg {
    pub fn load(&self) -> Result<FoxWrightParams> {
        let text = if self.source.trim_start().starts_with('{') {
            self.source.clone()
        } else {
            std::fs::read_to_string(&self.source)
                .map_err(|e| Error::Io(format!("cannot read params file {}: {e}", self.source)))?
        };
        FoxWrightParams::from_json(&text)
    }
}

/// A single `--z` or a `--sweep z:...`.
#[derive(Debug, Args)]
pub struct PointArg {
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<f64>,
    /// z:lin|log:start:stop:points
    #[arg(long, conflicts_with = "z", allow_hyphen_values = true)]
    pub sweep: Option<Sweep>,
}

#[derive(Debug, Args)]
pub struct ResidualArg {
    /// Relative residual above which the exit status is 1.
    #[arg(long, default_value_t = 1e-6)]
    pub max_residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Lin,
    Log,
}

/// Grid `var:scale:start:stop:points`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub var: String,
    pub scale: Scale,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        let frac = |i: usize| i as f64 / (n - 1) as f64;
        let mut out: Vec<f64> = match self.scale {
            Scale::Lin => (0..n).map(|i| self.start + (self.stop - self.start) * frac(i)).collect(),
            Scale::Log => {
                let (a, b) = (self.start.ln(), self.stop.ln());
                (0..n).map(|i| (a + (b - a) * frac(i)).exp()).collect()
            }
        };
        // exact endpoints
        out[0] = self.start;
        out[n - 1] = self.stop;
        out
    }
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [var, scale, start, stop, points] = parts[..] else {
            return Err(format!("expected var:lin|log:start:stop:points, got {s:?}"));
        };
        let scale = match scale {
            "lin" => Scale::Lin,
            "log" => Scale::Log,
            other => return Err(format!("scale must be lin or log, got {other:?}")),
        };
        let num = |t: &str| t.parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}"));
        let (start, stop) = (num(start)?, num(stop)?);
        let points: usize = points.parse().map_err(|e| format!("bad point count {points:?}: {e}"))?;
        if points < 2 {
            return Err("a sweep needs at least 2 points".into());
        }
        if !(start.is_finite() && stop.is_finite()) {
            return Err("sweep endpoints must be finite".into());
        }
        if scale == Scale::Log && !(start > 0.0 && stop > 0.0) {
            return Err("a log sweep needs positive endpoints".into());
        }
        Ok(Self { var: var.to_owned(), scale, start, stop, points })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectArg(pub Rect);

impl FromStr for RectArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let v = parse_reals(s, 4)?;
        Rect::new(v[0], v[1], v[2], v[3]).map(RectArg).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalArg(pub f64, pub f64);

impl FromStr for IntervalArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let v = parse_reals(s, 2)?;
        Ok(IntervalArg(v[0], v[1]))
    }
}

fn parse_reals(s: &str, n: usize) -> std::result::Result<Vec<f64>, String> {
    let v = s
        .split(':')
        .map(|t| t.parse::<f64>().map_err(|e| format!("bad number {t:?}: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if v.len() != n {
        return Err(format!("expected {n} colon-separated numbers, got {s:?}"));
    }
    Ok(v)
}

fn parse_tol(s: &str) -> std::result::Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t > 0.0 && t <= MAX_TOL {
        Ok(t)
    } else {
        Err(format!("tolerance must lie in (0, {MAX_TOL}], got {t}"))
    }
}

/// Grid for `var` from a single point or a sweep.
fn grid(var: &str, point: Option<f64>, sweep: Option<&Sweep>) -> Result<Vec<f64>> {
    match (point, sweep) {
        (Some(x), None) => Ok(vec![x]),
        (None, Some(s)) if s.var == var => Ok(s.values()),
        (None, Some(s)) => Err(Error::InvalidParams(format!("this command sweeps {var}, not {}", s.var))),
        (None, None) => Err(Error::InvalidParams(format!("give --{var} or --sweep {var}:..."))),
        (Some(_), Some(_)) => Err(Error::InvalidParams(format!("--{var} and --sweep are exclusive"))),
    }
}

impl PointArg {
    fn grid(&self) -> Result<Vec<f64>> {
        grid("z", self.z, self.sweep.as_ref())
    }
}

/// A finished command: the report, and whether a checked condition failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Report,
    pub condition_failed: bool,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Self { report, condition_failed: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Hypothesis = 1,
    Input = 2,
    Numerical = 3,
}

impl From<ErrorKind> for ExitStatus {
    fn from(kind: ErrorKind) -> Self {
        match kind {
            ErrorKind::Input => ExitStatus::Input,
            ErrorKind::Hypothesis => ExitStatus::Hypothesis,
            ErrorKind::Numerical => ExitStatus::Numerical,
        }
    }
}

/// Parse `args`, run, write the report to `out` and errors to `err`.
pub fn run_with<I, T, O, E>(args: I, mut out: O, mut err: E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    O: Write,
    E: Write,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = write!(out, "{e}");
            return ExitStatus::Success as i32;
        }
        Err(e) => {
            let payload = json!({"error": "usage", "kind": "input", "message": e.to_string().trim_end()});
            let _ = writeln!(err, "{payload}");
            return ExitStatus::Input as i32;
        }
    };
    let result = configure_threads().and_then(|()| execute(&config)).and_then(|outcome| {
        outcome.report.emit(config.format, &mut out)?;
        Ok(outcome)
    });
    match result {
        Ok(outcome) if outcome.condition_failed => ExitStatus::Hypothesis as i32,
        Ok(_) => ExitStatus::Success as i32,
        Err(e) => {
            let _ = writeln!(err, "{}", report::error_json(&e));
            ExitStatus::from(e.kind()) as i32
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    run_with(std::env::args_os(), std::io::stdout().lock(), std::io::stderr().lock())
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParams(format!("{THREADS_ENV} must be a non-negative integer, got {raw:?}")))?;
    if n > 0 {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Run a parsed configuration.
pub fn execute(config: &RunConfig) -> Result<Outcome> {
    let tol = config.tol;
    let series_tol = tol.min(SERIES_TOL_CAP);
    match &config.command {
        Command::Eval { params, at } => eval(&params.load()?, &at.grid()?, series_tol),
        Command::Convergence { params } => convergence(&params.load()?),
        Command::Check(c) => check(c),
        Command::Bounds(b) => bounds_cmd(b),
        Command::Mathieu(m) => mathieu_cmd(m, tol),
        Command::Verify(v) => verify(v),
        Command::Zeros { params, rect, n_boundary, right_half } => {
            let params = params.load()?;
            let count = if *right_half {
                conditions::zero_count_right_half(&params, rect.0, *n_boundary)?
            } else {
                conditions::count_zeros_in_rect(&params, rect.0, *n_boundary)?
            };
            let json = json!({"command": "zeros", "rect": rect.0, "n_boundary": n_boundary, "count": count});
            let table = Table::key_values([
                ("x0", rect.0.x0.into()),
                ("x1", rect.0.x1.into()),
                ("y0", rect.0.y0.into()),
                ("y1", rect.0.y1.into()),
                ("count", count.into()),
            ]);
            Ok(Outcome::ok(Report::new(json, table)))
        }
    }
}

fn eval(params: &FoxWrightParams, zs: &[f64], tol: f64) -> Result<Outcome> {
    let sums = zs.par_iter().map(|&z| params.eval_detailed(z, tol)).collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(["z", "value", "terms"]);
    let mut rows = Vec::with_capacity(zs.len());
    for (&z, s) in zs.iter().zip(&sums) {
        table.push(vec![z.into(), s.value.into(), s.terms.into()]);
        rows.push(json!({"z": z, "value": s.value, "terms": s.terms}));
    }
    let json = json!({"command": "eval", "params": params, "results": rows});
    Ok(Outcome::ok(Report::new(json, table)))
}

fn convergence(params: &FoxWrightParams) -> Result<Outcome> {
    let c = params.convergence();
    let (domain, radius) = match params.domain() {
        SeriesDomain::Entire => ("entire", None),
        SeriesDomain::Disk { radius } => ("disk", Some(radius)),
        SeriesDomain::Divergent => ("divergent", None),
    };
    let json = json!({"command": "convergence", "params": params, "data": c, "domain": domain, "radius": radius});
    let table = Table::key_values([
        ("delta", c.delta.into()),
        ("nabla", c.nabla.into()),
        ("rho", c.rho.into()),
        ("mu", c.mu.into()),
        ("gamma_pole", c.gamma_pole.into()),
        ("balanced", c.balanced.into()),
        ("domain", domain.into()),
        ("radius", radius.into()),
    ]);
    Ok(Outcome::ok(Report::new(json, table)))
}

fn condition_outcome(name: &str, params: &FoxWrightParams, report: &ConditionReport, extra: Value) -> Result<Outcome> {
    let mut table = Table::new(["predicate", "margin", "holds"]);
    for p in &report.details {
        table.push(vec![p.name.clone().into(), p.margin.into(), p.holds.into()]);
    }
    let json = json!({"command": "check", "check": name, "params": params, "report": report, "extra": extra});
    Ok(Outcome { report: Report::new(json, table), condition_failed: !report.satisfied })
}

/// Margins on a grid; a margin below −[`TURAN_SLACK`] is a failure.
fn turan_outcome(name: &str, var: &str, params: &FoxWrightParams, rows: Vec<(f64, f64, f64)>) -> Result<Outcome> {
    let mut table = Table::new([var, "z", "margin", "holds"]);
    let mut items = Vec::with_capacity(rows.len());
    let mut failed = false;
    for (x, z, m) in rows {
        let holds = m >= -TURAN_SLACK;
        failed |= !holds;
        table.push(vec![x.into(), z.into(), m.into(), holds.into()]);
        items.push(json!({var: x, "z": z, "margin": m, "holds": holds}));
    }
    let json = json!({"command": "check", "check": name, "params": params, "slack": TURAN_SLACK, "results": items});
    Ok(Outcome { report: Report::new(json, table), condition_failed: failed })
}

fn product(xs: &[f64], zs: &[f64]) -> Vec<(f64, f64)> {
    xs.iter().flat_map(|&x| zs.iter().map(move |&z| (x, z))).collect()
}

fn check(cmd: &CheckCommand) -> Result<Outcome> {
    match cmd {
        CheckCommand::H1 { params, nmax } => {
            let params = params.load()?;
            let report = conditions::check_h1(&params, *nmax)?;
            condition_outcome("h1", &params, &report, json!({"n_max": nmax}))
        }
        CheckCommand::H2 { params } => {
            let params = params.load()?;
            let h2 = conditions::check_h2_params(&params)?;
            let extra = json!({"psi_bar": h2.psi_bar, "psi_bar_positive": h2.psi_bar_positive});
            condition_outcome("h2", &params, &h2.report, extra)
        }
        CheckCommand::Hypotheses { params } => {
            let params = params.load()?;
            let report = conditions::check_theorem_hypotheses(&params);
            condition_outcome("hypotheses", &params, &report, Value::Null)
        }
        CheckCommand::Cm { params, interval, order, grid } => {
            let params = params.load()?;
            let f = |x: f64| params.eval(-x, 1e-15);
            let report = conditions::numeric_cm_check(f, (interval.0, interval.1), *order, *grid)?;
            let extra = json!({"interval": [interval.0, interval.1], "order": order, "grid": grid});
            condition_outcome("cm", &params, &report, extra)
        }
        CheckCommand::TuranSigma { params, sigma, z } => {
            let params = params.load()?;
            let rows = product(sigma, z)
                .par_iter()
                .map(|&(s, z)| conditions::turan_in_sigma(&params, s, z).map(|m| (s, z, m)))
                .collect::<Result<Vec<_>>>()?;
            turan_outcome("turan-sigma", "sigma", &params, rows)
        }
        CheckCommand::TuranA { params, weight, z } => {
            let params = params.load()?;
            let rows = product(weight, z)
                .par_iter()
                .map(|&(w, z)| conditions::turan_in_a(&params, w, z).map(|m| (w, z, m)))
                .collect::<Result<Vec<_>>>()?;
            turan_outcome("turan-a", "weight", &params, rows)
        }
    }
}

fn envelope_outcome(kind: &str, subject: Value, rows: &[Envelope]) -> Result<Outcome> {
    let mut table = Table::new(["z", "lower", "value", "upper"]);
    for e in rows {
        table.push(vec![e.z.into(), e.lower.into(), e.value.into(), e.upper.into()]);
    }
    let failed = rows.iter().any(|e| e.contained == Some(false));
    let json = json!({
        "command": "bounds",
        "kind": kind,
        "subject": subject,
        "all_contained": !failed,
        "envelopes": report::to_rounded_value(rows)?,
    });
    Ok(Outcome { report: Report::new(json, table), condition_failed: failed })
}

fn checking(unchecked: bool) -> Checking {
    if unchecked { Checking::Unchecked } else { Checking::Checked }
}

fn bounds_cmd(cmd: &BoundsCommand) -> Result<Outcome> {
    match cmd {
        BoundsCommand::Luke { params, at, unchecked } => {
            let luke = LukeBounds::new(params.load()?, checking(*unchecked))?;
            let rows = bounds::luke_sweep(&luke, &at.grid()?)?;
            envelope_outcome("luke", json!({"params": luke.params()}), &rows)
        }
        BoundsCommand::Lambda { params, lambda, at, unchecked } => {
            let luke = LukeBounds::new(params.load()?, checking(*unchecked))?;
            let rows = at
                .grid()?
                .par_iter()
                .map(|&z| luke.lambda_envelope(*lambda, z, true))
                .collect::<Result<Vec<_>>>()?;
            envelope_outcome("lambda", json!({"params": luke.params(), "lambda": lambda}), &rows)
        }
        BoundsCommand::Pfq { upper, lower, sigma, at, unchecked } => {
            let rows = at
                .grid()?
                .par_iter()
                .map(|&z| bounds::pfq_luke(upper, lower, *sigma, z, checking(*unchecked)))
                .collect::<Result<Vec<_>>>()?;
            envelope_outcome("pfq", json!({"upper": upper, "lower": lower, "sigma": sigma}), &rows)
        }
    }
}

fn mathieu_spec(alpha: f64, beta: f64, mu: f64, nu: f64, r: f64) -> Result<MathieuSpec> {
    MathieuSpec::new(alpha, beta, mu, nu, r)
}

fn mathieu_cmd(m: &MathieuArgs, tol: f64) -> Result<Outcome> {
    let rs = grid("r", m.r, m.sweep.as_ref())?;
    let spec = mathieu_spec(m.alpha, m.beta, m.mu, m.nu, rs[0])?;
    let subject = json!({
        "alpha": m.alpha, "beta": m.beta, "mu": m.mu, "nu": m.nu,
        "exponent": spec.exponent(), "weight": spec.weight(),
    });
    if m.sum_only {
        let sums = rs
            .par_iter()
            .map(|&r| mathieu::mathieu_sum_detailed(&spec.with_r(r)?, tol))
            .collect::<Result<Vec<_>>>()?;
        let mut table = Table::new(["r", "sum"]);
        let mut items = Vec::new();
        for (&r, s) in rs.iter().zip(&sums) {
            table.push(vec![r.into(), s.value.into()]);
            items.push(json!({"r": r, "sum": s.value, "half_width": s.half_width, "terms": s.terms}));
        }
        let json = json!({"command": "mathieu", "spec": subject, "rows": items});
        return Ok(Outcome::ok(Report::new(json, table)));
    }
    let rows: Vec<MathieuRow> = mathieu::mathieu_sweep(&spec, &rs, tol)?;
    let mut table = Table::new(["r", "L", "L1", "sum", "R1", "R"]);
    let mut items = Vec::new();
    let mut failed = false;
    for row in &rows {
        let zeta_ok = row.contained(MATHIEU_SLACK);
        let digamma_ok = row.contained_digamma(MATHIEU_SLACK);
        failed |= !zeta_ok || digamma_ok == Some(false);
        table.push(vec![
            row.r.into(),
            row.lower.into(),
            row.lower_digamma.into(),
            row.sum.into(),
            row.upper_digamma.into(),
            row.upper.into(),
        ]);
        items.push(json!({
            "r": row.r, "L": row.lower, "L1": row.lower_digamma, "sum": row.sum,
            "R1": row.upper_digamma, "R": row.upper,
            "contained": zeta_ok, "contained_digamma": digamma_ok,
        }));
    }
    let json = json!({"command": "mathieu", "spec": subject, "slack": MATHIEU_SLACK, "all_contained": !failed, "rows": items});
    Ok(Outcome { report: Report::new(json, table), condition_failed: failed })
}

fn residual_outcome(kind: &str, var: &str, subject: Value, max: f64, rows: &[(f64, ResidualReport)]) -> Result<Outcome> {
    let mut table = Table::new([var, "series", "integral", "abs_residual", "rel_residual"]);
    let mut items = Vec::new();
    let mut failed = false;
    for (x, r) in rows {
        failed |= !(r.rel_residual <= max);
        table.push(vec![(*x).into(), r.series.into(), r.integral.into(), r.abs_residual.into(), r.rel_residual.into()]);
        let mut item = report::to_rounded_value(r)?;
        item[var] = json!(x);
        items.push(item);
    }
    let json = json!({"command": "verify", "kind": kind, "subject": subject, "max_residual": max, "results": items});
    Ok(Outcome { report: Report::new(json, table), condition_failed: failed })
}

fn residuals<F>(xs: &[f64], f: F) -> Result<Vec<(f64, ResidualReport)>>
where
    F: Fn(f64) -> Result<ResidualReport> + Sync,
{
    xs.par_iter().map(|&x| f(x).map(|r| (x, r))).collect()
}

fn verify(cmd: &VerifyCommand) -> Result<Outcome> {
    match cmd {
        VerifyCommand::Laplace { params, at, residual } => {
            let density = HDensity::from_params(params.load()?)?;
            let rows = residuals(&at.grid()?, |z| hfunction::verify_laplace_rep(&density, z))?;
            let subject = json!({"params": density.spec().params()});
            residual_outcome("laplace", "z", subject, residual.max_residual, &rows)
        }
        VerifyCommand::Stieltjes { params, sigma, at, residual } => {
            let density = HDensity::from_params(params.load()?)?;
            let rows = residuals(&at.grid()?, |z| hfunction::verify_stieltjes_rep(&density, *sigma, z))?;
            let subject = json!({"params": density.spec().params(), "sigma": sigma});
            residual_outcome("stieltjes", "z", subject, residual.max_residual, &rows)
        }
        VerifyCommand::Reciprocal { params, at, residual } => {
            let params = params.load()?;
            let rows = residuals(&at.grid()?, |z| hfunction::verify_reciprocal_laplace(&params, z))?;
            residual_outcome("reciprocal", "z", json!({"params": params}), residual.max_residual, &rows)
        }
        VerifyCommand::Lambda { params, lambda, omega, at, residual } => {
            let params = params.load()?;
            let rows = residuals(&at.grid()?, |z| hfunction::verify_lambda_transform(&params, *lambda, *omega, z))?;
            let subject = json!({"params": params, "lambda": lambda, "omega": omega});
            residual_outcome("lambda", "z", subject, residual.max_residual, &rows)
        }
        VerifyCommand::Meijer { params, t, sweep, residual } => {
            let params = params.load()?;
            let rows = residuals(&grid("t", *t, sweep.as_ref())?, |t| hfunction::meijer_g_reduction_check(&params, t))?;
            residual_outcome("meijer", "t", json!({"params": params}), residual.max_residual, &rows)
        }
        VerifyCommand::MathieuIntegral { alpha, beta, mu, nu, r, sweep, residual } => {
            let rs = grid("r", *r, sweep.as_ref())?;
            let spec = mathieu_spec(*alpha, *beta, *mu, *nu, rs[0])?;
            let rows = residuals(&rs, |r| mathieu::verify_mathieu_integral_rep(&spec.with_r(r)?, 1e-10))?;
            let subject = json!({"alpha": alpha, "beta": beta, "mu": mu, "nu": nu});
            residual_outcome("mathieu-integral", "r", subject, residual.max_residual, &rows)
        }
    }
}
