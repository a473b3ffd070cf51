//! Coefficient scalars.
//!
//! Two scalar types implement [`Scalar`]: [`ExactComplex`] (Gaussian
//! rationals over arbitrary-precision integers) and [`Complex64`]. Every
//! series, coefficient vector and sample is generic over the scalar, so the
//! exact/float mode tag is carried by the type.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type ExactComplex = Complex<BigRational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Exact => f.write_str("exact"),
            Mode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

/// Rotation angle of a unimodular parameter `e^{iθ}`.
///
/// `Zero` and `Pi` are representable exactly (as `±1`); any other angle
/// is only available in float mode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Angle {
    Zero,
    Pi,
    Radians(f64),
}

impl Angle {
    pub fn from_radians(theta: f64) -> Self {
        if theta == 0.0 {
            Angle::Zero
        } else if (theta - std::f64::consts::PI).abs() < 1e-12 {
            Angle::Pi
        } else {
            Angle::Radians(theta)
        }
    }

    pub fn radians(self) -> f64 {
        match self {
            Angle::Zero => 0.0,
            Angle::Pi => std::f64::consts::PI,
            Angle::Radians(t) => t,
        }
    }

    /// `-θ`, keeping the exact variants exact (`-π ≡ π`).
    pub fn negate(self) -> Self {
        match self {
            Angle::Radians(t) => Angle::Radians(-t),
            exact => exact,
        }
    }

    pub fn is_exact(self) -> bool {
        !matches!(self, Angle::Radians(_))
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Accepts `pi`, `-pi` or a number of radians.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "pi" | "-pi" | "π" => Ok(Angle::Pi),
            _ => t
                .parse::<f64>()
                .map(Angle::from_radians)
                .map_err(|e| Error::Parse(format!("angle `{s}`: {e}"))),
        }
    }
}

impl std::fmt::Display for Angle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Angle::Zero => f.write_str("0"),
            Angle::Pi => f.write_str("pi"),
            Angle::Radians(t) => write!(f, "{t}"),
        }
    }
}

/// Field operations plus the comparisons the experiments need.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const MODE: Mode;

    fn from_i64(n: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn from_parts(re: &Rational, im: &Rational) -> Self;
    /// `e^{iθ}`; fails in exact mode unless θ ∈ {0, π}.
    fn unimodular(angle: Angle) -> Result<Self>;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;

    /// `|self|` compared with a nonnegative rational bound. Exact mode
    /// compares `|self|²` with `bound²`; float mode treats values within
    /// `rel_tol · bound` as equal.
    fn cmp_modulus(&self, bound: &Rational, rel_tol: f64) -> Ordering;

    /// Ordering of two real values; `None` when either is not real.
    fn real_cmp(&self, other: &Self) -> Option<Ordering>;

    /// Exact equality in exact mode; float mode uses
    /// `|a - b| <= rel_tol · max(|a|, |b|, 1)`.
    fn approx_eq(&self, other: &Self, rel_tol: f64) -> bool;

    /// `[re, im]` as rational strings (exact) or numbers (float).
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    /// Parses `re` or `re,im`.
    fn parse_str(s: &str) -> Result<Self>;

    /// Compact text form accepted by [`parse_str`](Self::parse_str): `re`
    /// when the imaginary part vanishes, `re,im` otherwise.
    fn to_param(&self) -> String {
        let c = self.to_json();
        let parts = c.as_array().expect("scalar json is a pair");
        let show = |v: &Value| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        let (re, im) = (show(&parts[0]), show(&parts[1]));
        if im == "0" || im == "0.0" || im == "-0.0" {
            re
        } else {
            format!("{re},{im}")
        }
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn modulus(&self) -> f64 {
        self.to_c64().norm()
    }

    fn powu(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    fn display(&self) -> String {
        let c = self.to_json();
        let parts = c.as_array().expect("scalar json is a pair");
        let show = |v: &Value| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        format!("[{}, {}]", show(&parts[0]), show(&parts[1]))
    }
}

/// Parses `p/q`, an integer, or a plain decimal like `-0.125` into an
/// exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = || Error::Parse(format!("not a rational number: `{s}`"));
    if t.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = t.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !int_digits.chars().all(|c| c.is_ascii_digit())
        {
            return Err(err());
        }
        let digits = format!("{int_digits}{frac}");
        let mut n = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
            .map_err(|_| err())?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(n, d));
    }
    BigInt::from_str(t)
        .map(Rational::from_integer)
        .map_err(|_| err())
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn rational_to_string(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn json_to_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(BigInt::from(i)))
            } else {
                Err(Error::Parse(format!(
                    "non-integer number {n} in exact mode (use a rational string)"
                )))
            }
        }
        other => Err(Error::Parse(format!("expected a number, got {other}"))),
    }
}

fn json_to_f64(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n
            .as_f64()
            .ok_or_else(|| Error::Parse(format!("bad number {n}"))),
        Value::String(s) => parse_rational(s).map(|q| rational_to_f64(&q)),
        other => Err(Error::Parse(format!("expected a number, got {other}"))),
    }
}

fn json_pair(v: &Value) -> Result<(&Value, &Value)> {
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => Ok((re, im)),
        _ => Err(Error::Parse(format!("expected [re, im], got {v}"))),
    }
}

impl Scalar for ExactComplex {
    const MODE: Mode = Mode::Exact;

    fn from_i64(n: i64) -> Self {
        Complex::new(Rational::from_integer(BigInt::from(n)), Rational::zero())
    }

    fn from_rational(q: &Rational) -> Self {
        Complex::new(q.clone(), Rational::zero())
    }

    fn from_parts(re: &Rational, im: &Rational) -> Self {
        Complex::new(re.clone(), im.clone())
    }

    fn unimodular(angle: Angle) -> Result<Self> {
        match angle {
            Angle::Zero => Ok(Self::one()),
            Angle::Pi => Ok(-Self::one()),
            Angle::Radians(t) => Err(Error::InexactAngle(t)),
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            let n = self.norm_sqr();
            Some(Complex::new(&self.re / &n, -&self.im / &n))
        }
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn cmp_modulus(&self, bound: &Rational, _rel_tol: f64) -> Ordering {
        self.norm_sqr().cmp(&(bound * bound))
    }

    fn real_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.im.is_zero() && other.im.is_zero() {
            Some(self.re.cmp(&other.re))
        } else {
            None
        }
    }

    fn approx_eq(&self, other: &Self, _rel_tol: f64) -> bool {
        self == other
    }

    fn to_json(&self) -> Value {
        Value::Array(vec![
            Value::String(rational_to_string(&self.re)),
            Value::String(rational_to_string(&self.im)),
        ])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let (re, im) = json_pair(v)?;
        Ok(Complex::new(json_to_rational(re)?, json_to_rational(im)?))
    }

    fn parse_str(s: &str) -> Result<Self> {
        parse_exact_complex(s)
    }

    fn modulus(&self) -> f64 {
        if self.im.is_zero() {
            rational_to_f64(&self.re.abs())
        } else {
            self.to_c64().norm()
        }
    }
}

impl Scalar for Complex64 {
    const MODE: Mode = Mode::Float;

    fn from_i64(n: i64) -> Self {
        Complex64::new(n as f64, 0.0)
    }

    fn from_rational(q: &Rational) -> Self {
        Complex64::new(rational_to_f64(q), 0.0)
    }

    fn from_parts(re: &Rational, im: &Rational) -> Self {
        Complex64::new(rational_to_f64(re), rational_to_f64(im))
    }

    fn unimodular(angle: Angle) -> Result<Self> {
        Ok(match angle {
            Angle::Zero => Complex64::new(1.0, 0.0),
            Angle::Pi => Complex64::new(-1.0, 0.0),
            Angle::Radians(t) => Complex64::from_polar(1.0, t),
        })
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Complex64::inv(self))
        }
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn cmp_modulus(&self, bound: &Rational, rel_tol: f64) -> Ordering {
        let b = rational_to_f64(bound);
        let m = self.norm();
        if (m - b).abs() <= rel_tol * b.abs() || (b == 0.0 && m <= rel_tol) {
            Ordering::Equal
        } else if m < b {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    fn real_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.im == 0.0 && other.im == 0.0 {
            self.re.partial_cmp(&other.re)
        } else {
            None
        }
    }

    fn approx_eq(&self, other: &Self, rel_tol: f64) -> bool {
        let scale = self.norm().max(other.norm()).max(1.0);
        (self - other).norm() <= rel_tol * scale
    }

    fn to_json(&self) -> Value {
        serde_json::json!([self.re, self.im])
    }

    fn from_json(v: &Value) -> Result<Self> {
        let (re, im) = json_pair(v)?;
        Ok(Complex64::new(json_to_f64(re)?, json_to_f64(im)?))
    }

    fn parse_str(s: &str) -> Result<Self> {
        parse_float_complex(s)
    }
}

/// Parses `re` or `re,im` (each a rational or decimal) as an exact scalar.
pub fn parse_exact_complex(s: &str) -> Result<ExactComplex> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex::new(parse_rational(re)?, parse_rational(im)?)),
        None => Ok(Complex::new(parse_rational(s)?, Rational::zero())),
    }
}

/// Parses `re` or `re,im` as a float scalar; accepts anything `f64` or
/// [`parse_rational`] accepts.
pub fn parse_float_complex(s: &str) -> Result<Complex64> {
    let one = |t: &str| -> Result<f64> {
        t.trim()
            .parse::<f64>()
            .or_else(|_| parse_rational(t).map(|q| rational_to_f64(&q)))
    };
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(one(re)?, one(im)?)),
        None => Ok(Complex64::new(one(s)?, 0.0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), Rational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-0.125").unwrap(), Rational::new((-1).into(), 8.into()));
        assert_eq!(parse_rational("7").unwrap(), Rational::from_integer(7.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn exact_cis_only_for_real_units() {
        assert_eq!(ExactComplex::unimodular(Angle::Pi).unwrap(), -ExactComplex::one());
        assert!(ExactComplex::unimodular(Angle::Radians(0.3)).is_err());
        let z = Complex64::unimodular(Angle::Radians(0.3)).unwrap();
        assert!((z.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn modulus_comparison_is_exact_in_exact_mode() {
        let three = ExactComplex::from_parts(&Rational::from_integer(3.into()), &Rational::from_integer(4.into()));
        let five = Rational::from_integer(5.into());
        assert_eq!(three.cmp_modulus(&five, 0.0), Ordering::Equal);
        let f = Complex64::new(5.0 * (1.0 + 1e-12), 0.0);
        assert_eq!(f.cmp_modulus(&five, 1e-9), Ordering::Equal);
        assert_eq!(f.cmp_modulus(&five, 1e-14), Ordering::Greater);
    }

    #[test]
    fn json_round_trip() {
        let q = ExactComplex::from_parts(&parse_rational("-2/3").unwrap(), &parse_rational("5").unwrap());
        assert_eq!(q.to_json(), serde_json::json!(["-2/3", "5"]));
        assert_eq!(ExactComplex::from_json(&q.to_json()).unwrap(), q);
        let f = Complex64::new(0.5, -1.0);
        assert_eq!(Complex64::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn powu_matches_repeated_product() {
        let x = ExactComplex::from_parts(&parse_rational("1/2").unwrap(), &parse_rational("1").unwrap());
        let mut acc = ExactComplex::one();
        for _ in 0..7 {
            acc = acc * x.clone();
        }
        assert_eq!(x.powu(7), acc);
        assert_eq!(x.powu(0), ExactComplex::one());
    }
}
