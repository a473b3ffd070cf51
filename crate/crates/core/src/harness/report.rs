use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use super::config::ScanConfig;
use crate::error::Result;

pub const REPORT_VERSION: &str = "1.0";

/// One functional evaluated on one sample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub id: u64,
    pub family: String,
    pub params: String,
    pub functional: String,
    pub n: usize,
    pub p: Option<u32>,
    pub value: Value,
    pub modulus: f64,
    pub bound: f64,
    pub slack: f64,
    pub koebe_rotation: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Extremum {
    pub functional: String,
    pub n: usize,
    pub p: Option<u32>,
    pub max_modulus: f64,
    pub bound: f64,
    pub min_slack: f64,
    pub argmax_id: u64,
    pub argmax_sample: String,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub id: u64,
    pub sample: String,
    pub functional: String,
    pub n: usize,
    pub p: Option<u32>,
    pub modulus: f64,
    pub bound: f64,
    pub koebe_rotation: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub id: u64,
    pub sample: String,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Warning {
    pub id: String,
    pub message: String,
    pub derived: String,
    pub printed: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "WARN")]
    Warn,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Warn => "WARN",
        })
    }
}

/// A fixed-answer check of the golden suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub found: String,
}

/// `r_n = |J_n| / (n − 1)²` along one sample.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioSeries {
    pub id: u64,
    pub sample: String,
    pub koebe_rotation: bool,
    pub n_min: usize,
    pub ratios: Vec<f64>,
    pub sup: f64,
    pub argmax_n: usize,
    /// Geometric mean of `r_{n+1}/r_n` over the upper half of the range.
    pub tail_decay: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub version: &'static str,
    pub experiment: String,
    pub config: ScanConfig,
    pub sample_count: usize,
    pub extrema: Vec<Extremum>,
    pub witnesses: Vec<Witness>,
    pub unexpected_witnesses: Vec<Witness>,
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub ratios: Vec<RatioSeries>,
    pub records: Vec<Record>,
    pub exit_code: i32,
    pub wall_clock_ms: u64,
}

impl ScanReport {
    pub fn new(config: &ScanConfig) -> Self {
        Self {
            version: REPORT_VERSION,
            experiment: config.experiment.name().to_string(),
            config: config.clone(),
            sample_count: 0,
            extrema: Vec::new(),
            witnesses: Vec::new(),
            unexpected_witnesses: Vec::new(),
            violations: Vec::new(),
            warnings: Vec::new(),
            checks: Vec::new(),
            ratios: Vec::new(),
            records: Vec::new(),
            exit_code: 0,
            wall_clock_ms: 0,
        }
    }

    /// Exit code 1 iff there is a violation or a non-Koebe equality
    /// witness.
    pub fn finish(&mut self) {
        self.exit_code = if self.violations.is_empty() && self.unexpected_witnesses.is_empty() { 0 } else { 1 };
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// JSON with the wall-clock field zeroed, for reproducibility checks.
    pub fn to_json_without_timing(&self) -> Value {
        let mut v = self.to_json();
        v["wall_clock_ms"] = Value::from(0);
        v
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        crate::io::write_json(path, &self.to_json())
    }

    /// One row per record: id, family, params, n, p, modulus, bound, slack.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["id", "family", "params", "n", "p", "modulus", "bound", "slack"])?;
        for r in &self.records {
            w.write_record([
                r.id.to_string(),
                r.family.clone(),
                r.params.clone(),
                r.n.to_string(),
                r.p.map(|p| p.to_string()).unwrap_or_default(),
                format!("{:e}", r.modulus),
                format!("{:e}", r.bound),
                format!("{:e}", r.slack),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_csv_file(&self, path: &Path) -> Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }

    /// Human summary, one line per extremum or check.
    pub fn summary(&self) -> String {
        let mut lines = vec![format!(
            "{} scan: {} samples, {} violations, {} witnesses ({} unexpected), {} warnings",
            self.experiment,
            self.sample_count,
            self.violations.len(),
            self.witnesses.len(),
            self.unexpected_witnesses.len(),
            self.warnings.len()
        )];
        for e in &self.extrema {
            let p = e.p.map(|p| format!(" p={p}")).unwrap_or_default();
            lines.push(format!(
                "  {} n={}{p}: max {:.6} / bound {:.6} (slack {:.3e}) at {}",
                e.functional, e.n, e.max_modulus, e.bound, e.min_slack, e.argmax_sample
            ));
        }
        if !self.checks.is_empty() {
            let passed = self.checks.iter().filter(|c| c.status == Status::Pass).count();
            lines.push(format!("  {passed}/{} checks pass", self.checks.len()));
        }
        for c in self.checks.iter().filter(|c| c.status == Status::Fail) {
            lines.push(format!("  FAIL {}: expected {}, found {}", c.name, c.expected, c.found));
        }
        for w in &self.warnings {
            lines.push(format!("  WARN {}: derived {} vs printed {}", w.id, w.derived, w.printed));
        }
        lines.join("\n")
    }
}
