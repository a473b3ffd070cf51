//! The `workbench` command line. [`run`] parses, dispatches and returns the
//! exit code: 0 ok, 1 mathematical violation, 2 configuration or IO error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::coeffs::{s_to_sigma, sigma_to_s, SCoeffs, SigmaCoeffs};
use crate::error::{Error, Result};
use crate::families::{regenerate, starlike_random, starlike_sample, starlike_sample_exact, UnivalentSample};
use crate::functionals::{slack, within_bound, FunctionalSpec};
use crate::harness::{parse_index_list, run_scan, Experiment, ScanConfig};
use crate::io::{coeffs_to_json, parse_coeff_array, read_json, sample_from_json, sample_to_json, AnySample, AnyVec};
use crate::metric::{
    golusin_extremal, hyperbolic, lambda_m, lemma33_check, lower_bound_metric, pullback, pullback_envelope,
    radial_curvature_check, GridSpec, LemmaTolerances, RadialMetric, StencilOrder, MAX_SPACING,
};
use crate::scalar::{rational_to_f64, ExactComplex, Mode, Scalar};
use crate::symbolic::{a_in_b, leading_structure, zalcman_in_b};

/// Margin below which `check-lemma33` reports a violated lower bound.
pub const MARGIN_TOLERANCE: f64 = 1e-9;

#[derive(Parser, Debug)]
#[command(name = "workbench", version, about = "Coefficient functionals and curvature checks for univalent functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact coefficient polynomials in the Σ-coefficients.
    #[command(subcommand)]
    Symbolic(SymbolicCmd),
    /// Coefficient transforms between S and Σ.
    #[command(subcommand)]
    Coeffs(CoeffsCmd),
    /// Extremal and sampled families.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Coefficient functionals.
    #[command(subcommand)]
    Functional(FunctionalCmd),
    /// Radial conformal metrics.
    #[command(subcommand)]
    Metric(MetricCmd),
    /// Batch experiments.
    Scan(ScanArgs),
}

#[derive(Subcommand, Debug)]
enum SymbolicCmd {
    /// `a_n` as an integer polynomial in `b_0 … b_{n−2}`.
    AInB {
        #[arg(long)]
        n: usize,
    },
    /// `a_n² − a_{2n−1}` in the b's.
    ZalcmanInB {
        #[arg(long)]
        n: usize,
    },
    /// Verified top-`b_0`-degree terms of `a_n`.
    Leading {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Direction {
    S2sigma,
    Sigma2s,
}

#[derive(Subcommand, Debug)]
enum CoeffsCmd {
    /// Convert `a_2 … a_N` to `b_0 … b_{N−2}` or back.
    Invert {
        #[arg(long, value_enum)]
        direction: Direction,
        /// JSON coefficient array (or sample object).
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum FamilyCmd {
    /// Write one sample as JSON.
    Emit(EmitArgs),
}

#[derive(Args, Debug)]
struct EmitArgs {
    #[arg(long)]
    name: String,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    #[arg(long, default_value_t = 12)]
    order: usize,
    #[arg(long, default_value = "exact")]
    mode: Mode,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b1: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum FunctionalCmd {
    /// Evaluate one functional on a sample file.
    Eval {
        /// zalcman, power_gap, adjacent_gap or perturbed.
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        p: u32,
        /// Perturbation polynomial in `a_3 … a_{2n−2}`, e.g. `1/10 a3^2`.
        #[arg(long, allow_hyphen_values = true)]
        perturbation: Option<String>,
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LemmaMetric {
    /// Envelope of the pullbacks under `c t^m` and the Golusin extremal.
    Envelope,
    /// The lower bound itself.
    LowerBound,
    /// Pullback under the Golusin extremal alone.
    Golusin,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModelMetric {
    Hyperbolic,
    Lambda,
}

#[derive(Subcommand, Debug)]
enum MetricCmd {
    /// Curvature and asymptotic hypotheses, then the lower bound.
    #[command(name = "check-lemma33")]
    CheckLemma33 {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        c: f64,
        #[arg(long, default_value = "0.05:0.9:0.001")]
        grid: GridSpec,
        #[arg(long, value_enum, default_value = "envelope")]
        metric: LemmaMetric,
        /// Multiplies the test metric (values below 1 break the hypotheses).
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long, default_value = "6")]
        stencil: StencilOrder,
    },
    /// Finite-difference curvature slack of a model metric.
    Curvature {
        #[arg(long, value_enum)]
        metric: ModelMetric,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value = "0.05:0.9:0.001")]
        grid: GridSpec,
        #[arg(long, default_value = "6")]
        stencil: StencilOrder,
    },
}

#[derive(Args, Debug)]
struct ScanArgs {
    experiment: Experiment,
    #[arg(long)]
    config: Option<PathBuf>,
    /// `3`, `3..8`, `3..=8` or `3,5,7`.
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    mode: Option<Mode>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

/// Maps an error to its exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::HypothesisNotMet { .. } | Error::StructureMismatch { .. } => 1,
        _ => 2,
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            if let Error::HypothesisNotMet { curvature_max_violation, fit_residual, .. } = &e {
                let v = json!({
                    "min_margin": null,
                    "curvature_max_violation": curvature_max_violation,
                    "hypothesis_fit_residual": fit_residual,
                    "error": e.to_string(),
                });
                let _ = print_json(out, &v);
            }
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn print_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Symbolic(c) => symbolic(c, out),
        Command::Coeffs(CoeffsCmd::Invert { direction, input }) => invert(direction, &input, out),
        Command::Family(FamilyCmd::Emit(a)) => emit(a, out),
        Command::Functional(FunctionalCmd::Eval { name, n, p, perturbation, input }) => {
            let spec = FunctionalSpec::from_name(&name, n, p, perturbation.as_deref())?;
            eval(&spec, &input, out)
        }
        Command::Metric(c) => metric(c, out),
        Command::Scan(a) => scan(a, out),
    }
}

fn symbolic(cmd: SymbolicCmd, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        SymbolicCmd::AInB { n } => writeln!(out, "{}", a_in_b(n)?)?,
        SymbolicCmd::ZalcmanInB { n } => writeln!(out, "{}", zalcman_in_b(n)?)?,
        SymbolicCmd::Leading { n } => {
            let l = leading_structure(n)?;
            writeln!(out, "{}", l.top)?;
        }
    }
    Ok(0)
}

fn invert(direction: Direction, input: &std::path::Path, out: &mut dyn Write) -> Result<i32> {
    let v = read_json(input)?;
    let coeffs = match v.get("coeffs") {
        Some(c) => c.clone(),
        None => v,
    };
    fn go<S: Scalar>(d: Direction, c: Vec<S>) -> Value {
        match d {
            Direction::S2sigma => coeffs_to_json(s_to_sigma(&SCoeffs::new(c)).coeffs()),
            Direction::Sigma2s => coeffs_to_json(sigma_to_s(&SigmaCoeffs::new(c)).tail()),
        }
    }
    let result = match parse_coeff_array(&coeffs)? {
        AnyVec::Exact(c) => go(direction, c),
        AnyVec::Float(c) => go(direction, c),
    };
    writeln!(out, "{}", serde_json::to_string(&result)?)?;
    Ok(0)
}

fn emit(a: EmitArgs, out: &mut dyn Write) -> Result<i32> {
    let mut params = BTreeMap::new();
    let mut put = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            params.insert(k.to_string(), v);
        }
    };
    put("m", a.m.map(|m| m.to_string()));
    put("theta", a.theta.clone());
    put("t", a.t.clone());
    put("b0", a.b0.clone());
    put("b1", a.b1.clone());
    put("k", a.k.clone());
    put("n", a.n.map(|n| n.to_string()));
    if ["koebe", "odd_koebe", "koebe_root"].contains(&a.name.as_str()) {
        params.entry("theta".into()).or_insert_with(|| "0".into());
    }
    let value = match (a.name.as_str(), a.mode) {
        ("starlike", mode) => {
            let seed = a.seed.ok_or_else(|| Error::Config("starlike needs --seed".into()))?;
            match (mode, &a.k) {
                (Mode::Exact, _) => sample_to_json(&starlike_sample_exact(seed, a.order)?),
                (Mode::Float, Some(k)) => {
                    let k = k.parse().map_err(|_| Error::Config(format!("--k `{k}` must be an integer")))?;
                    sample_to_json(&starlike_sample(seed, k, a.order)?)
                }
                (Mode::Float, None) => sample_to_json(&starlike_random(seed, a.order)?),
            }
        }
        (name, Mode::Exact) => sample_to_json(&regenerate::<ExactComplex>(name, &params, a.seed, a.order)?),
        (name, Mode::Float) => sample_to_json(&regenerate::<Complex64>(name, &params, a.seed, a.order)?),
    };
    match &a.out {
        Some(path) => crate::io::write_json(path, &value)?,
        None => print_json(out, &value)?,
    }
    Ok(0)
}

fn eval_sample<S: Scalar>(spec: &FunctionalSpec, s: &UnivalentSample<S>) -> Result<(Value, bool)> {
    let value = spec.evaluate(s.s()?)?;
    let bound = spec.bound();
    let ok = within_bound(&value, &bound, 1e-9);
    Ok((
        json!({
            "value": value.to_json(),
            "modulus": value.modulus(),
            "bound": rational_to_f64(&bound),
            "slack": slack(&value, &bound),
        }),
        ok,
    ))
}

fn eval(spec: &FunctionalSpec, input: &std::path::Path, out: &mut dyn Write) -> Result<i32> {
    spec.validate()?;
    let (v, ok) = match sample_from_json(&read_json(input)?)? {
        AnySample::Exact(s) => eval_sample(spec, &s)?,
        AnySample::Float(s) => eval_sample(spec, &s)?,
    };
    print_json(out, &v)?;
    Ok(if ok { 0 } else { 1 })
}

fn lemma_metric(kind: LemmaMetric, m: u32, c: f64, grid: &[f64]) -> Result<RadialMetric> {
    match kind {
        LemmaMetric::Envelope => pullback_envelope(m, c, grid),
        LemmaMetric::LowerBound => lower_bound_metric(m, c, grid),
        LemmaMetric::Golusin => pullback(golusin_extremal(m, Complex64::new(c, 0.0)), grid, 64),
    }
}

/// Grid points extended so the stencil covers the requested range; the
/// range itself when padding would leave `(0, 1)`.
fn stencil_points(grid: &GridSpec, stencil: StencilOrder) -> Result<Vec<f64>> {
    if grid.h > MAX_SPACING {
        return Err(Error::GridTooCoarse(format!("h = {} exceeds {MAX_SPACING}", grid.h)));
    }
    Ok(grid.padded(stencil.half_width()).unwrap_or(*grid).points())
}

fn metric(cmd: MetricCmd, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        MetricCmd::CheckLemma33 { m, c, grid, metric, scale, stencil } => {
            let points = stencil_points(&grid, stencil)?;
            let lambda = lemma_metric(metric, m, c, &points)?.scale(scale)?;
            let tol = LemmaTolerances { stencil, ..LemmaTolerances::default() };
            let r = lemma33_check(&lambda, m, c, &tol)?;
            print_json(
                out,
                &json!({
                    "min_margin": r.min_margin,
                    "curvature_max_violation": r.curvature_max_violation,
                    "hypothesis_fit_residual": r.hypothesis_fit_residual,
                    "argmin": r.argmin,
                    "c_fit": r.c_fit,
                }),
            )?;
            Ok(if r.min_margin >= -MARGIN_TOLERANCE { 0 } else { 1 })
        }
        MetricCmd::Curvature { metric, m, grid, stencil } => {
            let points = stencil_points(&grid, stencil)?;
            let lambda = match metric {
                ModelMetric::Hyperbolic => hyperbolic(&points)?,
                ModelMetric::Lambda => lambda_m(m, &points)?,
            };
            let r = radial_curvature_check(&lambda, stencil)?;
            print_json(
                out,
                &json!({
                    "h": r.h,
                    "points": r.radii.len(),
                    "min_slack": r.min_slack,
                    "max_abs_slack": r.max_abs_slack,
                    "error_scale": r.error_scale,
                }),
            )?;
            Ok(0)
        }
    }
}

fn scan(a: ScanArgs, out: &mut dyn Write) -> Result<i32> {
    let mut cfg = match &a.config {
        Some(path) => ScanConfig::from_file(path, a.experiment)?,
        None => ScanConfig::for_experiment(a.experiment),
    };
    cfg.experiment = a.experiment;
    if let Some(n) = &a.n {
        cfg.n = parse_index_list(n)?;
    }
    if let Some(p) = &a.p {
        cfg.p = parse_index_list(p)?.into_iter().map(|p| p as u32).collect();
    }
    if let Some(s) = a.samples {
        cfg.samples = s;
    }
    if a.seed.is_some() {
        cfg.seed = a.seed;
    }
    if let Some(m) = a.mode {
        cfg.mode = m;
    }
    if let Some(n) = a.n_max {
        cfg.n_max = n;
    }
    if a.out.is_some() {
        cfg.out = a.out;
    }
    if a.csv.is_some() {
        cfg.csv = a.csv;
    }
    let report = run_scan(&cfg)?;
    if cfg.out.is_some() {
        writeln!(out, "{}", report.summary())?;
    } else {
        print_json(out, &report.to_json())?;
    }
    Ok(report.exit_code)
}
