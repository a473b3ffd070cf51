//! Circularly symmetric conformal metrics `λ(|t|)|dt|` on the unit disk,
//! finite-difference curvature checks, and the growth bounds for
//! holomorphic self-maps with a zero of order `m` at the origin.

use std::collections::BTreeMap;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::UnivalentSample;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Model,
    Envelope,
    Pullback,
}

/// A radial metric sampled on an increasing grid in `(0, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialMetric {
    grid: Vec<f64>,
    values: Vec<f64>,
    provenance: Provenance,
    /// Uniform spacing, if the grid is uniform to 1e-9 relative.
    spacing: Option<f64>,
}

impl RadialMetric {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, provenance: Provenance) -> Result<Self> {
        if grid.len() != values.len() || grid.is_empty() {
            return Err(Error::InvalidMetric("grid and values must have the same nonzero length".into()));
        }
        if grid.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
            return Err(Error::InvalidMetric("radii must lie in (0, 1)".into()));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidMetric("grid must be strictly increasing".into()));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidMetric("values must be finite and nonnegative".into()));
        }
        let spacing = uniform_spacing(&grid);
        Ok(Self { grid, values, provenance, spacing })
    }

    pub fn from_fn(grid: &[f64], provenance: Provenance, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid.to_vec(), grid.iter().map(|&r| f(r)).collect(), provenance)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn spacing(&self) -> Option<f64> {
        self.spacing
    }

    pub fn scale(&self, factor: f64) -> Result<Self> {
        Self::new(self.grid.clone(), self.values.iter().map(|v| v * factor).collect(), self.provenance)
    }
}

fn uniform_spacing(grid: &[f64]) -> Option<f64> {
    if grid.len() < 2 {
        return None;
    }
    let h = (grid[grid.len() - 1] - grid[0]) / (grid.len() - 1) as f64;
    let uniform = grid.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.max(1e-300) + 1e-15);
    uniform.then_some(h)
}

/// `start, start + h, …` up to `end` (inclusive when it lands on a node).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    pub start: f64,
    pub end: f64,
    pub h: f64,
}

impl GridSpec {
    pub fn new(start: f64, end: f64, h: f64) -> Result<Self> {
        if !(h > 0.0 && start > 0.0 && end < 1.0 && start < end) {
            return Err(Error::Config(format!("grid {start}:{end}:{h} must satisfy 0 < start < end < 1, h > 0")));
        }
        Ok(Self { start, end, h })
    }

    pub fn points(&self) -> Vec<f64> {
        let n = ((self.end - self.start) / self.h + 1e-9).floor() as usize;
        (0..=n).map(|i| self.start + i as f64 * self.h).collect()
    }

    /// The same spacing extended by `k` nodes on each side, so a stencil of
    /// half-width `k` covers the original range.
    pub fn padded(&self, k: usize) -> Result<Self> {
        Self::new(self.start - k as f64 * self.h, self.end + k as f64 * self.h, self.h)
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    /// `start:end:h`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("grid `{s}` is not start:end:h")));
        }
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| Error::Parse(format!("grid `{s}`: {e}")));
        Self::new(num(parts[0])?, num(parts[1])?, num(parts[2])?)
    }
}

/// `1/(1 − r²)`, curvature −4.
pub fn hyperbolic(grid: &[f64]) -> Result<RadialMetric> {
    RadialMetric::from_fn(grid, Provenance::Model, |r| 1.0 / (1.0 - r * r))
}

/// `m r^{m−1}/(1 − r^{2m})`, the pullback of the hyperbolic density under
/// `t ↦ t^m`.
pub fn lambda_m(m: u32, grid: &[f64]) -> Result<RadialMetric> {
    lower_bound_metric(m, 1.0, grid)
}

/// `m c r^{m−1}/(1 − c² r^{2m})`.
pub fn lower_bound_metric(m: u32, c: f64, grid: &[f64]) -> Result<RadialMetric> {
    RadialMetric::from_fn(grid, Provenance::Model, |r| lemma_lower_bound(m, c, r))
}

pub fn lemma_lower_bound(m: u32, c: f64, r: f64) -> f64 {
    let rm = r.powi(m as i32);
    m as f64 * c * r.powi(m as i32 - 1) / (1.0 - c * c * rm * rm)
}

/// Pullback `|g'(t)|/(1 − |g(t)|²)` of the hyperbolic density under a
/// holomorphic self-map, made radial by taking the maximum over
/// `n_angles` equally spaced angles (always including 0 and π when
/// `n_angles` is even).
pub fn pullback(
    g: impl Fn(Complex64) -> (Complex64, Complex64),
    grid: &[f64],
    n_angles: usize,
) -> Result<RadialMetric> {
    let n_angles = n_angles.max(1);
    let values = grid
        .iter()
        .map(|&r| {
            (0..n_angles)
                .map(|j| {
                    let t = Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / n_angles as f64);
                    let (v, d) = g(t);
                    d.norm() / (1.0 - v.norm_sqr())
                })
                .fold(0.0f64, f64::max)
        })
        .collect();
    RadialMetric::new(grid.to_vec(), values, Provenance::Pullback)
}

/// `g(t) = c t^m`; its pullback equals the lemma's lower bound.
pub fn monomial_map(m: u32, c: f64) -> impl Fn(Complex64) -> (Complex64, Complex64) {
    move |t| {
        let v = t.powu(m) * c;
        let d = t.powu(m - 1) * (c * m as f64);
        (v, d)
    }
}

/// `g(t) = t^m (t + c)/(1 + c̄ t)`, the extremal map of the Golusin bound.
pub fn golusin_extremal(m: u32, c: Complex64) -> impl Fn(Complex64) -> (Complex64, Complex64) {
    move |t| {
        let den = Complex64::new(1.0, 0.0) + c.conj() * t;
        let blaschke = (t + c) / den;
        let db = (Complex64::new(1.0, 0.0) - c.norm_sqr()) / (den * den);
        let tm = t.powu(m);
        let dtm = if m == 0 { Complex64::new(0.0, 0.0) } else { t.powu(m - 1) * m as f64 };
        (tm * blaschke, dtm * blaschke + tm * db)
    }
}

/// `r^m (r + c)/(1 + c r)`.
pub fn golusin_bound(m: u32, c: f64, r: f64) -> Result<f64> {
    if m == 0 || !(0.0..=1.0).contains(&c) || !(0.0..1.0).contains(&r) {
        return Err(Error::ParameterOutOfRange(format!("golusin_bound(m={m}, c={c}, r={r})")));
    }
    Ok(r.powi(m as i32) * (r + c) / (1.0 + c * r))
}

/// Pointwise maximum of metrics sampled on a common grid.
pub fn envelope(metrics: &[RadialMetric]) -> Result<RadialMetric> {
    let first = metrics.first().ok_or_else(|| Error::InvalidMetric("empty envelope".into()))?;
    for m in &metrics[1..] {
        if m.grid != first.grid {
            return Err(Error::GridMismatch);
        }
    }
    let values = (0..first.grid.len())
        .map(|i| metrics.iter().map(|m| m.values[i]).fold(0.0f64, f64::max))
        .collect();
    RadialMetric::new(first.grid.clone(), values, Provenance::Envelope)
}

/// Central-difference stencil order for the radial Laplacian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StencilOrder {
    Second,
    Fourth,
    Sixth,
}

impl StencilOrder {
    pub fn half_width(self) -> usize {
        match self {
            StencilOrder::Second => 1,
            StencilOrder::Fourth => 2,
            StencilOrder::Sixth => 3,
        }
    }

    pub fn accuracy(self) -> u32 {
        2 * self.half_width() as u32
    }

    /// `(d1, d2)` weights over offsets `−k..=k`, unscaled by `h`.
    fn weights(self) -> (&'static [f64], &'static [f64]) {
        match self {
            StencilOrder::Second => (&[-0.5, 0.0, 0.5], &[1.0, -2.0, 1.0]),
            StencilOrder::Fourth => (
                &[1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0],
                &[-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0],
            ),
            StencilOrder::Sixth => (
                &[-1.0 / 60.0, 3.0 / 20.0, -3.0 / 4.0, 0.0, 3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0],
                &[1.0 / 90.0, -3.0 / 20.0, 3.0 / 2.0, -49.0 / 18.0, 3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0],
            ),
        }
    }
}

impl FromStr for StencilOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2" => Ok(StencilOrder::Second),
            "4" => Ok(StencilOrder::Fourth),
            "6" => Ok(StencilOrder::Sixth),
            other => Err(Error::Parse(format!("stencil order `{other}` (expected 2, 4 or 6)"))),
        }
    }
}

pub const MAX_SPACING: f64 = 0.01;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureReport {
    pub stencil: StencilOrder,
    pub h: f64,
    /// Radii where the full stencil fits.
    pub radii: Vec<f64>,
    /// `Δ log λ` at those radii.
    pub laplacian: Vec<f64>,
    /// `Δ log λ − 4λ²`; nonnegative iff curvature ≤ −4.
    pub slack: Vec<f64>,
    pub min_slack: f64,
    pub max_abs_slack: f64,
    /// Leading truncation error scale `h^p` of the stencil.
    pub error_scale: f64,
}

impl CurvatureReport {
    /// `max(0, −min slack)`.
    pub fn max_violation(&self) -> f64 {
        (-self.min_slack).max(0.0)
    }
}

/// `Δ log λ = u'' + u'/r` with `u = log λ`, by central differences on a
/// uniform grid, and the slack `Δ log λ − 4λ²` at every interior node.
pub fn radial_curvature_check(metric: &RadialMetric, stencil: StencilOrder) -> Result<CurvatureReport> {
    let h = metric
        .spacing
        .ok_or_else(|| Error::GridTooCoarse("grid is not uniform".into()))?;
    if h > MAX_SPACING {
        return Err(Error::GridTooCoarse(format!("h = {h} exceeds {MAX_SPACING}")));
    }
    let k = stencil.half_width();
    let n = metric.grid.len();
    if n < 2 * k + 1 {
        return Err(Error::GridTooCoarse(format!("{n} points, stencil needs {}", 2 * k + 1)));
    }
    if metric.values.iter().any(|&v| v <= 0.0) {
        return Err(Error::InvalidMetric("curvature needs λ > 0".into()));
    }
    let u: Vec<f64> = metric.values.iter().map(|v| v.ln()).collect();
    let (w1, w2) = stencil.weights();
    let mut radii = Vec::with_capacity(n - 2 * k);
    let mut laplacian = Vec::with_capacity(n - 2 * k);
    let mut slack = Vec::with_capacity(n - 2 * k);
    for i in k..n - k {
        let window = &u[i - k..=i + k];
        let d1: f64 = window.iter().zip(w1).map(|(a, b)| a * b).sum::<f64>() / h;
        let d2: f64 = window.iter().zip(w2).map(|(a, b)| a * b).sum::<f64>() / (h * h);
        let r = metric.grid[i];
        let lap = d2 + d1 / r;
        let lam = metric.values[i];
        radii.push(r);
        laplacian.push(lap);
        slack.push(lap - 4.0 * lam * lam);
    }
    let min_slack = slack.iter().copied().fold(f64::INFINITY, f64::min);
    let max_abs_slack = slack.iter().map(|s| s.abs()).fold(0.0, f64::max);
    Ok(CurvatureReport {
        stencil,
        h,
        radii,
        laplacian,
        slack,
        min_slack,
        max_abs_slack,
        error_scale: h.powi(stencil.accuracy() as i32),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AsymptoticFit {
    /// Intercept of the cubic fit of `λ/(m r^{m−1})`; estimates `c`.
    pub c_fit: f64,
    /// `|c_fit − c|/c`.
    pub residual: f64,
    pub window: [f64; 2],
    pub points: usize,
}

/// Least-squares cubic fit of `λ(r)/(m r^{m−1})` on `r ≤ r_window`.
pub fn asymptotic_fit(metric: &RadialMetric, m: u32, c: f64, r_window: f64) -> Result<AsymptoticFit> {
    let pts: Vec<(f64, f64)> = metric
        .grid
        .iter()
        .zip(&metric.values)
        .filter(|(r, _)| **r <= r_window)
        .map(|(&r, &v)| (r, v / (m as f64 * r.powi(m as i32 - 1))))
        .collect();
    if pts.len() < 8 {
        return Err(Error::GridTooCoarse(format!("only {} points below r = {r_window} for the fit", pts.len())));
    }
    let a = DMatrix::from_fn(pts.len(), 4, |i, j| pts[i].0.powi(j as i32));
    let y = DVector::from_iterator(pts.len(), pts.iter().map(|p| p.1));
    let beta = a
        .svd(true, true)
        .solve(&y, 1e-14)
        .map_err(|e| Error::InvalidMetric(format!("fit failed: {e}")))?;
    let c_fit = beta[0];
    Ok(AsymptoticFit {
        c_fit,
        residual: (c_fit - c).abs() / c,
        window: [pts[0].0, pts[pts.len() - 1].0],
        points: pts.len(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LemmaTolerances {
    /// Allowed `max(0, −slack)`.
    pub curvature: f64,
    /// Allowed relative error of the fitted leading coefficient.
    pub fit: f64,
    /// Upper end of the small-`r` fit window.
    pub fit_window: f64,
    pub stencil: StencilOrder,
}

impl Default for LemmaTolerances {
    fn default() -> Self {
        Self { curvature: 1e-5, fit: 1e-2, fit_window: 0.2, stencil: StencilOrder::Sixth }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaReport {
    pub m: u32,
    pub c: f64,
    /// `min (λ − m c r^{m−1}/(1 − c² r^{2m}))` over the grid.
    pub min_margin: f64,
    pub argmin: f64,
    pub curvature_max_violation: f64,
    pub hypothesis_fit_residual: f64,
    pub c_fit: f64,
    pub tolerances: LemmaTolerances,
}

/// Checks the curvature and asymptotic hypotheses, then the lower bound
/// `λ ≥ m c r^{m−1}/(1 − c² r^{2m})` at every grid point.
pub fn lemma33_check(metric: &RadialMetric, m: u32, c: f64, tol: &LemmaTolerances) -> Result<LemmaReport> {
    if m == 0 || !(c > 0.0 && c <= 1.0) {
        return Err(Error::ParameterOutOfRange(format!("need m >= 1 and c in (0, 1], got m={m}, c={c}")));
    }
    let curvature = radial_curvature_check(metric, tol.stencil)?;
    let fit = asymptotic_fit(metric, m, c, tol.fit_window)?;
    let violation = curvature.max_violation();
    if violation > tol.curvature || fit.residual > tol.fit {
        let mut reasons = Vec::new();
        if violation > tol.curvature {
            reasons.push(format!("curvature violation {violation:.3e} > {:.1e}", tol.curvature));
        }
        if fit.residual > tol.fit {
            reasons.push(format!("leading coefficient fit {:.6} vs c = {c} (residual {:.3e})", fit.c_fit, fit.residual));
        }
        return Err(Error::HypothesisNotMet {
            reason: reasons.join("; "),
            curvature_max_violation: violation,
            fit_residual: fit.residual,
        });
    }
    let (min_margin, argmin) = metric
        .grid
        .iter()
        .zip(&metric.values)
        .map(|(&r, &v)| (v - lemma_lower_bound(m, c, r), r))
        .fold((f64::INFINITY, 0.0), |acc, x| if x.0 < acc.0 { x } else { acc });
    Ok(LemmaReport {
        m,
        c,
        min_margin,
        argmin,
        curvature_max_violation: violation,
        hypothesis_fit_residual: fit.residual,
        c_fit: fit.c_fit,
        tolerances: *tol,
    })
}

/// Envelope of the pullbacks under `c t^m` and under the radialized Golusin
/// extremal `t^m (t + c)/(1 + c t)`.
pub fn pullback_envelope(m: u32, c: f64, grid: &[f64]) -> Result<RadialMetric> {
    let a = pullback(monomial_map(m, c), grid, 1)?;
    let b = pullback(golusin_extremal(m, Complex64::new(c, 0.0)), grid, 64)?;
    envelope(&[a, b])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DilatationReport {
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub t: [f64; 2],
    /// Dilatation of the homotopy map `F_t` computed from its coefficients.
    pub dilatation: f64,
    /// The value the family's known extension predicts.
    pub expected: f64,
    /// Upper bound checked (`|t|²` for the two-coefficient maps).
    pub bound: f64,
    pub holds: bool,
}

/// Dilatation identities for the two families with explicit extremal
/// extensions:
///
/// * `F = z + b_0 + b_1/z`: the homotopy has affine extension with
///   dilatation `|b_1 t²| ≤ |t|²`.
/// * `F_{m,s}`: the homotopy is `F_{m, s t^{m+1}}`, whose asymptotic
///   dilatation `(m+1)/2 · |b_m| · |t|^{m+1}` equals `|s| |t|^{m+1}`.
pub fn dilatation_identities<S: Scalar>(f: &UnivalentSample<S>, t: Complex64) -> Result<DilatationReport> {
    let b = f.sigma()?;
    if t.norm() > 1.0 + 1e-12 {
        return Err(Error::ParameterOutOfRange(format!("|t| = {} exceeds 1", t.norm())));
    }
    let ta = t.norm();
    let (dilatation, expected, bound) = match f.family.as_str() {
        "two_coeff_sigma" => {
            let b1 = b.b(1)?.to_c64();
            let d = (b1 * t * t).norm();
            (d, b1.norm() * ta * ta, ta * ta)
        }
        "f_root_small" => {
            let m: usize = f
                .params
                .get("m")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parse("f_root_small sample without m".into()))?;
            let s = S::parse_str(f.params.get("t").map(String::as_str).unwrap_or("1"))?.to_c64();
            let bm = b.b(m)?.to_c64() * t.powu(m as u32 + 1);
            let d = (m as f64 + 1.0) / 2.0 * bm.norm();
            (d, s.norm() * ta.powi(m as i32 + 1), ta.powi(m as i32 + 1))
        }
        other => return Err(Error::UnsupportedFamily(other.to_string())),
    };
    let holds = (dilatation - expected).abs() <= 1e-12 * expected.max(1.0) && dilatation <= bound * (1.0 + 1e-12);
    Ok(DilatationReport {
        family: f.family.clone(),
        params: f.params.clone(),
        t: [t.re, t.im],
        dilatation,
        expected,
        bound,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{f_root_small, koebe, two_coeff_sigma};
    use crate::scalar::{Angle, ExactComplex};

    fn grid() -> Vec<f64> {
        GridSpec::new(0.05, 0.9, 1e-3).unwrap().padded(3).unwrap().points()
    }

    #[test]
    fn model_metrics_have_curvature_minus_four() {
        let g = grid();
        let hyp = radial_curvature_check(&hyperbolic(&g).unwrap(), StencilOrder::Sixth).unwrap();
        assert!(hyp.max_abs_slack < 1e-6, "{}", hyp.max_abs_slack);
        for m in [1, 2, 3, 5] {
            let r = radial_curvature_check(&lambda_m(m, &g).unwrap(), StencilOrder::Sixth).unwrap();
            assert!(r.max_abs_slack < 1e-6, "m={m}: {}", r.max_abs_slack);
            assert!((r.radii[0] - 0.05).abs() < 1e-12);
        }
        let flat = RadialMetric::from_fn(&g, Provenance::Model, |_| 0.7).unwrap();
        let r = radial_curvature_check(&flat, StencilOrder::Second).unwrap();
        assert!((r.min_slack + 4.0 * 0.49).abs() < 1e-9);
    }

    #[test]
    fn coarse_grids_are_rejected() {
        let g = GridSpec::new(0.05, 0.9, 0.05).unwrap().points();
        assert!(matches!(
            radial_curvature_check(&hyperbolic(&g).unwrap(), StencilOrder::Sixth),
            Err(Error::GridTooCoarse(_))
        ));
        let irregular = vec![0.1, 0.1005, 0.102, 0.1022, 0.103, 0.104, 0.105];
        assert!(radial_curvature_check(&hyperbolic(&irregular).unwrap(), StencilOrder::Second).is_err());
    }

    #[test]
    fn lemma_on_envelopes() {
        let g = grid();
        let tol = LemmaTolerances::default();
        for m in 1..=3 {
            for c in [0.5, 0.8, 1.0] {
                let env = pullback_envelope(m, c, &g).unwrap();
                let rep = lemma33_check(&env, m, c, &tol).unwrap();
                assert!(rep.min_margin >= -1e-9, "m={m} c={c}: {rep:?}");
            }
        }
        let lb = lower_bound_metric(2, 0.8, &g).unwrap();
        assert!(lemma33_check(&lb, 2, 0.8, &tol).unwrap().min_margin.abs() < 1e-12);
        match lemma33_check(&lb.scale(1.1).unwrap(), 2, 0.8, &tol) {
            Err(Error::HypothesisNotMet { fit_residual, .. }) => assert!(fit_residual > 0.05),
            other => panic!("expected HypothesisNotMet, got {other:?}"),
        }
    }

    #[test]
    fn envelope_properties() {
        let g = grid();
        let a = lower_bound_metric(2, 0.5, &g).unwrap();
        let b = lower_bound_metric(2, 0.8, &g).unwrap();
        assert_eq!(envelope(&[a.clone(), a.clone()]).unwrap().values(), a.values());
        let e = envelope(&[a.clone(), b.clone()]).unwrap();
        assert!(e.values().iter().zip(a.values()).all(|(x, y)| x >= y));
        let fit = asymptotic_fit(&e, 2, 0.8, 0.2).unwrap();
        assert!(fit.residual < 1e-3);
        let other = lower_bound_metric(2, 0.5, &g[1..]).unwrap();
        assert!(matches!(envelope(&[a, other]), Err(Error::GridMismatch)));
    }

    #[test]
    fn golusin_cases() {
        assert!((golusin_bound(2, 1.0, 0.3).unwrap() - 0.09).abs() < 1e-15);
        assert!((golusin_bound(2, 0.0, 0.3).unwrap() - 0.027).abs() < 1e-15);
        let g = golusin_extremal(2, Complex64::new(0.4, 0.0));
        let (v, _) = g(Complex64::new(0.3, 0.0));
        assert!((v.norm() - golusin_bound(2, 0.4, 0.3).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn dilatations() {
        type Q = ExactComplex;
        let half = Complex64::new(0.5, 0.0);
        let f = two_coeff_sigma(Q::from_i64(0), Q::from_i64(1), 3).unwrap();
        let r = dilatation_identities(&f, half).unwrap();
        assert!((r.dilatation - 0.25).abs() < 1e-15 && r.holds);
        let f = two_coeff_sigma(Q::from_i64(0), Q::from_ratio(1, 2), 3).unwrap();
        assert!((dilatation_identities(&f, half).unwrap().dilatation - 0.125).abs() < 1e-15);
        let f = f_root_small(2, Q::from_i64(1), 4).unwrap();
        let r = dilatation_identities(&f, half).unwrap();
        assert!((r.dilatation - 0.125).abs() < 1e-15 && r.holds);
        let k = koebe::<Q>(Angle::Zero, 4).unwrap();
        assert!(matches!(dilatation_identities(&k, half), Err(Error::WrongClass { .. })));
    }
}
