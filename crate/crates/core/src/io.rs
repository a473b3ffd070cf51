//! JSON forms of coefficient vectors and samples.
//!
//! A coefficient is `[re, im]`; exact vectors use rational strings
//! (`["1/2", "0"]`), float vectors use numbers. A sample file is
//! `{klass, family, params, seed, coeffs}`.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coeffs::{SCoeffs, SigmaCoeffs};
use crate::error::{Error, Result};
use crate::families::{Klass, SampleCoeffs, UnivalentSample};
use crate::scalar::{ExactComplex, Mode, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum AnyVec {
    Exact(Vec<ExactComplex>),
    Float(Vec<Complex64>),
}

impl AnyVec {
    pub fn mode(&self) -> Mode {
        match self {
            AnyVec::Exact(_) => Mode::Exact,
            AnyVec::Float(_) => Mode::Float,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyVec::Exact(v) => v.len(),
            AnyVec::Float(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn is_exact_entry(v: &Value) -> bool {
    matches!(v, Value::Array(p) if p.iter().all(Value::is_string))
}

/// Reads a coefficient array; the mode is exact iff every entry is a pair
/// of strings.
pub fn parse_coeff_array(v: &Value) -> Result<AnyVec> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Parse("coefficients must be a JSON array".into()))?;
    if items.is_empty() {
        return Err(Error::Parse("empty coefficient array".into()));
    }
    if items.iter().all(is_exact_entry) {
        Ok(AnyVec::Exact(items.iter().map(ExactComplex::from_json).collect::<Result<_>>()?))
    } else {
        Ok(AnyVec::Float(items.iter().map(Complex64::from_json).collect::<Result<_>>()?))
    }
}

pub fn coeffs_to_json<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(Scalar::to_json).collect())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SampleFile {
    klass: Klass,
    family: String,
    #[serde(default)]
    params: BTreeMap<String, String>,
    #[serde(default)]
    seed: Option<u64>,
    coeffs: Value,
}

pub fn sample_to_json<S: Scalar>(s: &UnivalentSample<S>) -> Value {
    let coeffs = match &s.coeffs {
        SampleCoeffs::S(a) => coeffs_to_json(a.tail()),
        SampleCoeffs::Sigma(b) => coeffs_to_json(b.coeffs()),
    };
    serde_json::to_value(SampleFile {
        klass: s.klass(),
        family: s.family.clone(),
        params: s.params.clone(),
        seed: s.seed,
        coeffs,
    })
    .expect("sample serializes")
}

#[derive(Clone, Debug, PartialEq)]
pub enum AnySample {
    Exact(UnivalentSample<ExactComplex>),
    Float(UnivalentSample<Complex64>),
}

fn build<S: Scalar>(klass: Klass, v: Vec<S>, f: SampleFile) -> UnivalentSample<S> {
    let coeffs = match klass {
        Klass::S => SampleCoeffs::S(SCoeffs::new(v)),
        Klass::Sigma => SampleCoeffs::Sigma(SigmaCoeffs::new(v)),
    };
    UnivalentSample { coeffs, family: f.family, params: f.params, seed: f.seed }
}

/// Reads a sample object, or a bare coefficient array taken as `a_2, …`
/// of an S-class function.
pub fn sample_from_json(v: &Value) -> Result<AnySample> {
    let file = if v.is_array() {
        SampleFile {
            klass: Klass::S,
            family: "input".into(),
            params: BTreeMap::new(),
            seed: None,
            coeffs: v.clone(),
        }
    } else {
        serde_json::from_value::<SampleFile>(v.clone()).map_err(|e| Error::Parse(format!("sample: {e}")))?
    };
    let klass = file.klass;
    Ok(match parse_coeff_array(&file.coeffs)? {
        AnyVec::Exact(c) => AnySample::Exact(build(klass, c, file)),
        AnyVec::Float(c) => AnySample::Float(build(klass, c, file)),
    })
}

pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json(path: &Path, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{koebe_root, starlike_random};
    use crate::scalar::Angle;
    use serde_json::json;

    #[test]
    fn mode_detection() {
        assert_eq!(parse_coeff_array(&json!([["1/2", "0"], ["3", "-1"]])).unwrap().mode(), Mode::Exact);
        assert_eq!(parse_coeff_array(&json!([[0.5, 0.0]])).unwrap().mode(), Mode::Float);
        assert!(parse_coeff_array(&json!([])).is_err());
        assert!(parse_coeff_array(&json!({"a": 1})).is_err());
    }

    #[test]
    fn sample_round_trip() {
        let s = koebe_root::<ExactComplex>(3, Angle::Pi, 12).unwrap();
        assert_eq!(sample_from_json(&sample_to_json(&s)).unwrap(), AnySample::Exact(s));
        let f = starlike_random(9, 10).unwrap();
        assert_eq!(sample_from_json(&sample_to_json(&f)).unwrap(), AnySample::Float(f));
    }
}
