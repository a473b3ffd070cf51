use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Mode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Zalcman,
    Distortion,
    Ratio,
    Golden,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Zalcman => "zalcman",
            Experiment::Distortion => "distortion",
            Experiment::Ratio => "ratio",
            Experiment::Golden => "golden",
        }
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zalcman" => Ok(Experiment::Zalcman),
            "distortion" => Ok(Experiment::Distortion),
            "ratio" => Ok(Experiment::Ratio),
            "golden" => Ok(Experiment::Golden),
            other => Err(Error::Parse(format!("unknown experiment `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Relative excess over a bound tolerated in float mode before a
    /// sample counts as a violation.
    pub violation: f64,
    /// Relative distance to a bound under which a float-mode sample is an
    /// equality witness. Exact mode always uses exact equality.
    pub equality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { violation: 1e-9, equality: 1e-9 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScanConfig {
    pub experiment: Experiment,
    /// Indices `n`; empty means the experiment default.
    pub n: Vec<usize>,
    /// Powers `p` (distortion only); empty means `1..=3`.
    pub p: Vec<u32>,
    /// Number of random starlike samples added to the catalog.
    pub samples: usize,
    pub seed: Option<u64>,
    pub mode: Mode,
    pub tolerances: Tolerances,
    /// Largest `n` of the ratio scan.
    pub n_max: usize,
    /// Homotopy parameter of the ratio scan's decaying samples.
    pub homotopy_t: f64,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self::for_experiment(Experiment::Zalcman)
    }
}

impl ScanConfig {
    pub fn for_experiment(experiment: Experiment) -> Self {
        let (samples, mode) = match experiment {
            Experiment::Zalcman | Experiment::Distortion => (1000, Mode::Exact),
            Experiment::Ratio => (5, Mode::Float),
            Experiment::Golden => (0, Mode::Exact),
        };
        Self {
            experiment,
            n: Vec::new(),
            p: Vec::new(),
            samples,
            seed: Some(42),
            mode,
            tolerances: Tolerances::default(),
            n_max: 40,
            homotopy_t: 0.5,
            out: None,
            csv: None,
        }
    }

    /// Reads a JSON config; missing fields take the defaults of the
    /// experiment named in the file (or `fallback`).
    pub fn from_file(path: &Path, fallback: Experiment) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let raw: serde_json::Value = serde_json::from_str(&text)?;
        let experiment = match raw.get("experiment").and_then(|v| v.as_str()) {
            Some(e) => e.parse()?,
            None => fallback,
        };
        let mut base = serde_json::to_value(Self::for_experiment(experiment))?;
        if let (Some(dst), Some(src)) = (base.as_object_mut(), raw.as_object()) {
            for (k, v) in src {
                dst.insert(k.clone(), v.clone());
            }
        } else {
            return Err(Error::Config("config file must be a JSON object".into()));
        }
        let cfg: Self = serde_json::from_value(base).map_err(|e| Error::Config(e.to_string()))?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let t = &self.tolerances;
        for (name, v) in [("violation", t.violation), ("equality", t.equality)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("tolerance `{name}` must be positive, got {v}")));
            }
        }
        if self.samples > 0 && self.seed.is_none() && self.experiment != Experiment::Golden {
            return Err(Error::Config("a seed is required when random samples are used".into()));
        }
        if self.experiment == Experiment::Ratio {
            if self.n_max < 3 {
                return Err(Error::Config(format!("n_max must be at least 3, got {}", self.n_max)));
            }
            if !(self.homotopy_t > 0.0 && self.homotopy_t < 1.0) {
                return Err(Error::Config(format!("homotopy_t must lie in (0, 1), got {}", self.homotopy_t)));
            }
        }
        if self.experiment == Experiment::Zalcman && self.n.iter().any(|&n| n < 2) {
            return Err(Error::Config("zalcman scan needs n >= 2".into()));
        }
        if self.p.contains(&0) {
            return Err(Error::Config("p must be at least 1".into()));
        }
        Ok(())
    }

    pub fn n_values(&self) -> Vec<usize> {
        if !self.n.is_empty() {
            return self.n.clone();
        }
        match self.experiment {
            Experiment::Zalcman => (3..=8).collect(),
            Experiment::Distortion => (3..=6).collect(),
            Experiment::Ratio => (3..=self.n_max).collect(),
            Experiment::Golden => Vec::new(),
        }
    }

    pub fn p_values(&self) -> Vec<u32> {
        if self.p.is_empty() {
            (1..=3).collect()
        } else {
            self.p.clone()
        }
    }
}

/// Parses `3`, `3..8` (inclusive), `3..=8`, or `3,5,7`.
pub fn parse_index_list(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parse(format!("index list `{s}`"));
    let one = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b) = (one(a)?, one(b)?);
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(one).collect()
}
