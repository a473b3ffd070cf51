use num_complex::Complex64;

use super::config::ScanConfig;
use super::report::{RatioSeries, ScanReport, Violation};
use super::scan_samples;
use crate::error::{Error, Result};
use crate::families::{
    homotopy_s, is_koebe_rotation, koebe, splitmix64, starlike_sample, starlike_with_weights, UnivalentSample,
};
use crate::functionals::{zalcman, FunctionalSpec};
use crate::scalar::{Angle, Mode};

/// Koebe (boundary case), two Koebe homotopies at `t`, a fixed two-point
/// starlike map with weights `(0.6, 0.4)`, and `samples − 1` seeded
/// starlike maps with 2 to 4 factors.
pub fn ratio_samples(cfg: &ScanConfig) -> Result<Vec<UnivalentSample<Complex64>>> {
    let order = 2 * cfg.n_max - 1;
    let t = Complex64::new(cfg.homotopy_t, 0.0);
    let mut out = vec![
        koebe(Angle::Zero, order)?,
        homotopy_s(&koebe(Angle::Zero, order)?, &t)?,
        homotopy_s(&koebe(Angle::Radians(1.3), order)?, &t)?,
    ];
    if cfg.samples > 0 {
        let w = [Complex64::new(0.6, 0.0), Complex64::new(0.4, 0.0)];
        out.push(starlike_with_weights(&[Angle::Zero, Angle::Radians(2.0)], &w, order)?);
        let seed = cfg.seed.ok_or_else(|| Error::Config("seed required".into()))?;
        for i in 1..cfg.samples {
            out.push(starlike_sample(splitmix64(seed, i as u64), 2 + i % 3, order)?);
        }
    }
    Ok(out)
}

/// `r_n = |a_n² − a_{2n−1}|/(n − 1)²` for `3 ≤ n ≤ n_max`; fails for any
/// non-Koebe sample with `sup r_n ≥ 1`.
pub fn run_asymptotic_ratio(cfg: &ScanConfig) -> Result<ScanReport> {
    if cfg.mode != Mode::Float {
        return Err(Error::Config("the ratio scan runs in float mode".into()));
    }
    let samples = ratio_samples(cfg)?;
    let ns: Vec<usize> = cfg.n_values().into_iter().filter(|&n| n >= 3 && n <= cfg.n_max).collect();
    if ns.is_empty() {
        return Err(Error::Config("no n in 3..=n_max".into()));
    }
    let specs: Vec<FunctionalSpec> = ns.iter().map(|&n| FunctionalSpec::Zalcman { n }).collect();
    let mut report = scan_samples(cfg, &specs, &samples)?;
    for (i, s) in samples.iter().enumerate() {
        let a = s.s()?;
        let ratios: Vec<f64> = ns
            .iter()
            .map(|&n| Ok(zalcman(a, n)?.norm() / ((n - 1) * (n - 1)) as f64))
            .collect::<Result<_>>()?;
        let (arg, sup) = ratios
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (k, &r)| if r > acc.1 { (k, r) } else { acc });
        let half = ratios.len() / 2;
        let tail = &ratios[half..];
        let tail_decay = if tail.len() >= 2 && tail[0] > 0.0 && tail[tail.len() - 1] > 0.0 {
            (tail[tail.len() - 1] / tail[0]).powf(1.0 / (tail.len() - 1) as f64)
        } else {
            f64::NAN
        };
        let koebe_rotation = is_koebe_rotation(a, cfg.tolerances.equality);
        if !koebe_rotation && sup >= 1.0 {
            report.violations.push(Violation {
                id: i as u64,
                sample: s.label(),
                check: "ratio".into(),
                detail: format!("sup r_n = {sup} at n = {} is not below 1", ns[arg]),
            });
        }
        report.ratios.push(RatioSeries {
            id: i as u64,
            sample: s.label(),
            koebe_rotation,
            n_min: ns[0],
            ratios,
            sup,
            argmax_n: ns[arg],
            tail_decay,
        });
    }
    report.finish();
    Ok(report)
}
