//! Scan drivers: catalog plus seeded starlike batch, evaluated in parallel
//! and merged in sample order.

pub mod config;
pub mod golden;
pub mod ratio;
pub mod report;

use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::{batch, catalog, is_koebe_rotation, Sampled, UnivalentSample};
use crate::functionals::{attains_bound, slack, within_bound, FunctionalSpec};
use crate::scalar::{ExactComplex, Mode, Scalar};
use crate::coeffs::SCoeffs;

pub use config::{parse_index_list, Experiment, ScanConfig, Tolerances};
pub use report::{Check, Extremum, RatioSeries, Record, ScanReport, Status, Violation, Warning, Witness};

pub const THREADS_ENV: &str = "WORKBENCH_THREADS";

/// Runs `f` on a rayon pool capped by `WORKBENCH_THREADS` (default: all
/// cores).
pub fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got `{v}`")))?,
        Err(_) => 0,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Dispatches on the experiment and mode; writes `out`/`csv` if set.
pub fn run_scan(cfg: &ScanConfig) -> Result<ScanReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut report = with_pool(|| match (cfg.experiment, cfg.mode) {
        (Experiment::Zalcman, Mode::Exact) => run_zalcman_scan::<ExactComplex>(cfg),
        (Experiment::Zalcman, Mode::Float) => run_zalcman_scan::<Complex64>(cfg),
        (Experiment::Distortion, Mode::Exact) => run_distortion_scan::<ExactComplex>(cfg),
        (Experiment::Distortion, Mode::Float) => run_distortion_scan::<Complex64>(cfg),
        (Experiment::Ratio, _) => ratio::run_asymptotic_ratio(cfg),
        (Experiment::Golden, _) => golden::run_golden_suite(cfg),
    })??;
    report.wall_clock_ms = start.elapsed().as_millis() as u64;
    if let Some(path) = &cfg.out {
        report.write_json(path)?;
    }
    if let Some(path) = &cfg.csv {
        report.write_csv_file(path)?;
    }
    Ok(report)
}

/// `|J_n| ≤ (n − 1)²` over the catalog and the random batch.
pub fn run_zalcman_scan<S: Sampled>(cfg: &ScanConfig) -> Result<ScanReport> {
    let specs: Vec<FunctionalSpec> = cfg
        .n_values()
        .into_iter()
        .map(|n| FunctionalSpec::Zalcman { n })
        .collect();
    functional_scan::<S>(cfg, &specs)
}

/// Power and adjacent-coefficient gaps for every `(n, p)` in range.
pub fn run_distortion_scan<S: Sampled>(cfg: &ScanConfig) -> Result<ScanReport> {
    let mut specs = Vec::new();
    for n in cfg.n_values() {
        for p in cfg.p_values() {
            if n > 3 {
                specs.push(FunctionalSpec::PowerGap { n, p });
            }
            if n > 2 {
                specs.push(FunctionalSpec::AdjacentGap { n, p });
            }
        }
    }
    if specs.is_empty() {
        return Err(Error::Config("no (n, p) pair in range for the distortion functionals".into()));
    }
    functional_scan::<S>(cfg, &specs)
}

/// `a_2 = 0` and `a_{2k+1} = u^k`, `a_{2k} = 0` for some unimodular `u`.
pub fn is_odd_koebe_rotation<S: Scalar>(f: &SCoeffs<S>, rel_tol: f64) -> bool {
    let (Ok(a2), Ok(u)) = (f.a(2), f.a(3)) else { return false };
    if !a2.is_zero() || u.cmp_modulus(&crate::scalar::Rational::from_integer(1.into()), rel_tol).is_ne() {
        return false;
    }
    let mut p = S::one();
    for n in 2..=f.order() {
        let a = f.a(n).expect("index within order");
        let expected = if n % 2 == 0 {
            S::zero()
        } else {
            p = p * u.clone();
            p.clone()
        };
        if !a.approx_eq(&expected, rel_tol) {
            return false;
        }
    }
    true
}

/// Equality cases known for each functional: Koebe rotations, plus the odd
/// Koebe function for `a_2² − a_3`.
fn expected_witness<S: Scalar>(spec: &FunctionalSpec, f: &SCoeffs<S>, tol: f64) -> bool {
    match spec {
        FunctionalSpec::Zalcman { n: 2 } => is_koebe_rotation(f, tol) || is_odd_koebe_rotation(f, tol),
        _ => is_koebe_rotation(f, tol),
    }
}

struct Outcome {
    record: Record,
    witness: bool,
    expected: bool,
    violation: bool,
}

fn evaluate_sample<S: Scalar>(
    id: u64,
    sample: &UnivalentSample<S>,
    specs: &[FunctionalSpec],
    bounds: &[crate::scalar::Rational],
    tol: &Tolerances,
) -> Result<Vec<Outcome>> {
    let a = sample.s()?;
    let params: Vec<String> = sample.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let mut params = params.join(";");
    if let Some(seed) = sample.seed {
        if !params.is_empty() {
            params.push(';');
        }
        params.push_str(&format!("seed={seed}"));
    }
    let koebe = is_koebe_rotation(a, tol.equality);
    let mut out = Vec::with_capacity(specs.len());
    for (spec, bound) in specs.iter().zip(bounds) {
        let value = spec.evaluate(a)?;
        let witness = attains_bound(&value, bound, tol.equality);
        let violation = !within_bound(&value, bound, tol.violation);
        out.push(Outcome {
            witness,
            expected: witness && expected_witness(spec, a, tol.equality),
            violation,
            record: Record {
                id,
                family: sample.family.clone(),
                params: params.clone(),
                functional: spec.name().to_string(),
                n: spec.n(),
                p: spec.p(),
                modulus: value.modulus(),
                bound: crate::scalar::rational_to_f64(bound),
                slack: slack(&value, bound),
                koebe_rotation: koebe,
                value: value.to_json(),
            },
        });
    }
    Ok(out)
}

/// Catalog plus batch, every spec on every sample.
pub fn functional_scan<S: Sampled>(cfg: &ScanConfig, specs: &[FunctionalSpec]) -> Result<ScanReport> {
    for s in specs {
        s.validate()?;
    }
    let order = specs.iter().map(FunctionalSpec::required_order).max().unwrap_or(2);
    let mut samples = catalog::<S>(order)?;
    if cfg.samples > 0 {
        let seed = cfg.seed.ok_or_else(|| Error::Config("seed required".into()))?;
        samples.extend(batch::<S>(seed, cfg.samples, order)?);
    }
    scan_samples(cfg, specs, &samples)
}

/// Evaluates `specs` on the given samples (ids are positions).
pub fn scan_samples<S: Scalar>(
    cfg: &ScanConfig,
    specs: &[FunctionalSpec],
    samples: &[UnivalentSample<S>],
) -> Result<ScanReport> {
    let bounds: Vec<_> = specs.iter().map(FunctionalSpec::bound).collect();
    let tol = cfg.tolerances;
    let outcomes: Vec<Vec<Outcome>> = samples
        .par_iter()
        .enumerate()
        .map(|(i, s)| evaluate_sample(i as u64, s, specs, &bounds, &tol))
        .collect::<Result<_>>()?;

    let mut report = ScanReport::new(cfg);
    report.sample_count = samples.len();
    let mut extrema: Vec<Option<Extremum>> = vec![None; specs.len()];
    for (i, per_sample) in outcomes.into_iter().enumerate() {
        let label = samples[i].label();
        for (k, o) in per_sample.into_iter().enumerate() {
            let r = &o.record;
            let better = match &extrema[k] {
                None => true,
                Some(e) => r.modulus > e.max_modulus,
            };
            if better {
                let count = extrema[k].as_ref().map_or(0, |e| e.samples);
                let min_slack = extrema[k].as_ref().map_or(r.slack, |e| e.min_slack.min(r.slack));
                extrema[k] = Some(Extremum {
                    functional: r.functional.clone(),
                    n: r.n,
                    p: r.p,
                    max_modulus: r.modulus,
                    bound: r.bound,
                    min_slack,
                    argmax_id: r.id,
                    argmax_sample: label.clone(),
                    samples: count,
                });
            } else if let Some(e) = &mut extrema[k] {
                e.min_slack = e.min_slack.min(r.slack);
            }
            if let Some(e) = &mut extrema[k] {
                e.samples += 1;
            }
            if o.witness {
                let w = Witness {
                    id: r.id,
                    sample: label.clone(),
                    functional: r.functional.clone(),
                    n: r.n,
                    p: r.p,
                    modulus: r.modulus,
                    bound: r.bound,
                    koebe_rotation: r.koebe_rotation,
                };
                if o.expected {
                    report.witnesses.push(w);
                } else {
                    report.unexpected_witnesses.push(w);
                }
            }
            if o.violation {
                report.violations.push(Violation {
                    id: r.id,
                    sample: label.clone(),
                    check: specs[k].to_string(),
                    detail: format!("|J| = {} exceeds bound {}", r.modulus, r.bound),
                });
            }
            report.records.push(o.record);
        }
    }
    report.extrema = extrema.into_iter().flatten().collect();
    report.finish();
    Ok(report)
}
