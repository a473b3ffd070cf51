//! Homogeneous coefficient functionals on S and their sharp bounds.
//!
//! Every functional `J` here satisfies `J(f_t) = t^d J(f)` under
//! `f_t(z) = t^{-1} f(tz)`, because `a_n(f_t) = t^{n-1} a_n(f)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Pow, Signed, Zero};

use crate::coeffs::SCoeffs;
use crate::error::{Error, Result};
use crate::families::{batch, catalog, homotopy_s, UnivalentSample};
use crate::grammar::parse_terms;
use crate::scalar::{rational_to_f64, Rational, Scalar};

/// Seed and size of the starlike batch used by the perturbation
/// admissibility estimate.
pub const PROXY_SEED: u64 = 0x5EED_0005;
pub const PROXY_SAMPLES: usize = 2000;

/// A polynomial `P(a_3, …, a_{2n-2})` with nonnegative rational
/// coefficients, weighted-homogeneous of degree `2n − 2` when `a_j` has
/// weight `j − 1`.
#[derive(Clone)]
pub struct Perturbation {
    n: usize,
    /// coefficient and `index -> exponent`
    terms: Vec<(Rational, BTreeMap<usize, u32>)>,
    estimate: Arc<OnceLock<f64>>,
}

impl fmt::Debug for Perturbation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perturbation(n={}, {})", self.n, self)
    }
}

impl PartialEq for Perturbation {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms == other.terms
    }
}

impl fmt::Display for Perturbation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, e)| {
                let factors: Vec<String> = e
                    .iter()
                    .map(|(j, k)| if *k == 1 { format!("a{j}") } else { format!("a{j}^{k}") })
                    .collect();
                format!("{c}*{}", factors.join("*"))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl Perturbation {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: Vec::new(), estimate: Arc::new(OnceLock::new()) }
    }

    /// Validates sign, variable range and weighted degree of each term.
    pub fn new(n: usize, terms: Vec<(Rational, BTreeMap<usize, u32>)>) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidPerturbation(format!("needs n >= 3, got {n}")));
        }
        let mut merged: BTreeMap<Vec<(usize, u32)>, Rational> = BTreeMap::new();
        for (c, e) in terms {
            if c.is_negative() {
                return Err(Error::InvalidPerturbation(format!("negative coefficient {c}")));
            }
            let mut weight = 0usize;
            for (&j, &k) in &e {
                if !(3..=2 * n - 2).contains(&j) {
                    return Err(Error::InvalidPerturbation(format!(
                        "variable a{j} outside a3..a{}",
                        2 * n - 2
                    )));
                }
                weight += (j - 1) * k as usize;
            }
            if weight != 2 * n - 2 {
                return Err(Error::InvalidPerturbation(format!(
                    "monomial of weighted degree {weight}, expected {}",
                    2 * n - 2
                )));
            }
            *merged.entry(e.into_iter().collect()).or_insert_with(Rational::zero) += c;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (c, e.into_iter().collect()))
            .collect();
        Ok(Self { n, terms, estimate: Arc::new(OnceLock::new()) })
    }

    /// Parses e.g. `1/10*a3^2` (see [`crate::grammar`]).
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(Self::zero(n));
        }
        Self::new(n, parse_terms(s, 'a')?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate<S: Scalar>(&self, f: &SCoeffs<S>) -> Result<S> {
        let mut acc = S::zero();
        for (c, e) in &self.terms {
            let mut t = S::from_rational(c);
            for (&j, &k) in e {
                t = t * f.a(j)?.powu(k);
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Value at the Koebe function `a_j = j`.
    pub fn at_koebe(&self) -> Rational {
        let mut acc = Rational::zero();
        for (c, e) in &self.terms {
            let mut t = c.clone();
            for (&j, &k) in e {
                t *= Rational::from_integer(BigInt::from(j)).pow(k as i32);
            }
            acc += t;
        }
        acc
    }

    /// `max |P|` over the float catalog and a fixed starlike batch. This is
    /// a lower estimate of the supremum over the whole class; it is
    /// computed once and cached.
    pub fn admissibility_estimate(&self) -> Result<f64> {
        if let Some(v) = self.estimate.get() {
            return Ok(*v);
        }
        let order = 2 * self.n - 2;
        let mut samples: Vec<UnivalentSample<Complex64>> = catalog(order)?;
        samples.extend(batch(PROXY_SEED, PROXY_SAMPLES, order)?);
        let mut best = 0.0f64;
        for s in &samples {
            best = best.max(self.evaluate(s.s()?)?.norm());
        }
        Ok(*self.estimate.get_or_init(|| best))
    }

    /// The admissibility threshold `(n − 1)² / 2`.
    pub fn threshold(&self) -> f64 {
        ((self.n - 1) * (self.n - 1)) as f64 / 2.0
    }

    /// Errors with `PerturbationTooLarge` unless the estimate is below the
    /// threshold.
    pub fn check_admissible(&self) -> Result<f64> {
        if self.is_zero() {
            return Ok(0.0);
        }
        let estimate = self.admissibility_estimate()?;
        let threshold = self.threshold();
        if estimate >= threshold {
            return Err(Error::PerturbationTooLarge { estimate, threshold });
        }
        Ok(estimate)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FunctionalSpec {
    /// `a_n² − a_{2n−1}`
    Zalcman { n: usize },
    /// `a_n^p − a_2^{p(n−1)}`
    PowerGap { n: usize, p: u32 },
    /// `a_{n+1}^p − a_2^p a_n^p`
    AdjacentGap { n: usize, p: u32 },
    /// `a_n² − a_{2n−1} + P(a_3, …, a_{2n−2})`
    Perturbed { n: usize, perturbation: Perturbation },
}

impl FunctionalSpec {
    /// Builds a spec by name, checking the index ranges.
    pub fn from_name(name: &str, n: usize, p: u32, perturbation: Option<&str>) -> Result<Self> {
        let spec = match name {
            "zalcman" => FunctionalSpec::Zalcman { n },
            "power_gap" => FunctionalSpec::PowerGap { n, p },
            "adjacent_gap" => FunctionalSpec::AdjacentGap { n, p },
            "perturbed" => FunctionalSpec::Perturbed {
                n,
                perturbation: Perturbation::parse(n, perturbation.unwrap_or("0"))?,
            },
            other => return Err(Error::Parse(format!("unknown functional `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::ParameterOutOfRange(msg));
        match self {
            FunctionalSpec::Zalcman { n } if *n < 2 => bad(format!("zalcman needs n >= 2, got {n}")),
            FunctionalSpec::PowerGap { n, .. } if *n <= 3 => bad(format!("power_gap needs n > 3, got {n}")),
            FunctionalSpec::AdjacentGap { n, .. } if *n <= 2 => bad(format!("adjacent_gap needs n > 2, got {n}")),
            FunctionalSpec::PowerGap { p: 0, .. } | FunctionalSpec::AdjacentGap { p: 0, .. } => {
                bad("p must be at least 1".into())
            }
            FunctionalSpec::Perturbed { n, perturbation } if *n < 3 || perturbation.n() != *n => {
                bad(format!("perturbed functional needs n >= 3 and a matching perturbation, got n = {n}"))
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FunctionalSpec::Zalcman { .. } => "zalcman",
            FunctionalSpec::PowerGap { .. } => "power_gap",
            FunctionalSpec::AdjacentGap { .. } => "adjacent_gap",
            FunctionalSpec::Perturbed { .. } => "perturbed",
        }
    }

    pub fn n(&self) -> usize {
        match self {
            FunctionalSpec::Zalcman { n }
            | FunctionalSpec::PowerGap { n, .. }
            | FunctionalSpec::AdjacentGap { n, .. }
            | FunctionalSpec::Perturbed { n, .. } => *n,
        }
    }

    pub fn p(&self) -> Option<u32> {
        match self {
            FunctionalSpec::PowerGap { p, .. } | FunctionalSpec::AdjacentGap { p, .. } => Some(*p),
            _ => None,
        }
    }

    /// Homogeneity degree `d`.
    pub fn degree(&self) -> u32 {
        match *self {
            FunctionalSpec::Zalcman { n } | FunctionalSpec::Perturbed { n, .. } => (2 * n - 2) as u32,
            FunctionalSpec::PowerGap { n, p } => p * (n as u32 - 1),
            FunctionalSpec::AdjacentGap { n, p } => p * n as u32,
        }
    }

    /// Largest coefficient index read.
    pub fn required_order(&self) -> usize {
        match *self {
            FunctionalSpec::Zalcman { n } | FunctionalSpec::Perturbed { n, .. } => (2 * n - 1).max(2),
            FunctionalSpec::PowerGap { n, .. } => n,
            FunctionalSpec::AdjacentGap { n, .. } => n + 1,
        }
    }

    /// The sharp bound on `|J|` over S, attained by the Koebe function.
    pub fn bound(&self) -> Rational {
        let int = |x: BigInt| Rational::from_integer(x);
        let two = BigInt::from(2);
        match self {
            FunctionalSpec::Zalcman { n } => int(BigInt::from((n - 1) * (n - 1))),
            FunctionalSpec::PowerGap { n, p } => {
                int(two.pow(p * (*n as u32 - 1)) - BigInt::from(*n).pow(*p))
            }
            FunctionalSpec::AdjacentGap { n, p } => {
                int(two.pow(*p) * BigInt::from(*n).pow(*p) - BigInt::from(n + 1).pow(*p))
            }
            FunctionalSpec::Perturbed { n, perturbation } => {
                int(BigInt::from((n - 1) * (n - 1))) + perturbation.at_koebe()
            }
        }
    }

    pub fn bound_f64(&self) -> f64 {
        rational_to_f64(&self.bound())
    }

    pub fn evaluate<S: Scalar>(&self, f: &SCoeffs<S>) -> Result<S> {
        match self {
            FunctionalSpec::Zalcman { n } => zalcman(f, *n),
            FunctionalSpec::PowerGap { n, p } => power_gap(f, *n, *p),
            FunctionalSpec::AdjacentGap { n, p } => adjacent_gap(f, *n, *p),
            FunctionalSpec::Perturbed { n, perturbation } => perturbed_zalcman(f, *n, perturbation),
        }
    }
}

impl fmt::Display for FunctionalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionalSpec::Zalcman { n } => write!(f, "zalcman(n={n})"),
            FunctionalSpec::PowerGap { n, p } => write!(f, "power_gap(n={n},p={p})"),
            FunctionalSpec::AdjacentGap { n, p } => write!(f, "adjacent_gap(n={n},p={p})"),
            FunctionalSpec::Perturbed { n, perturbation } => write!(f, "perturbed(n={n},P={perturbation})"),
        }
    }
}

pub fn zalcman<S: Scalar>(f: &SCoeffs<S>, n: usize) -> Result<S> {
    let an = f.a(n)?;
    let a2n1 = f.a(2 * n - 1)?;
    Ok(an.clone() * an - a2n1)
}

pub fn power_gap<S: Scalar>(f: &SCoeffs<S>, n: usize, p: u32) -> Result<S> {
    let an = f.a(n)?;
    let a2 = f.a(2)?;
    Ok(an.powu(p) - a2.powu(p * (n as u32 - 1)))
}

pub fn adjacent_gap<S: Scalar>(f: &SCoeffs<S>, n: usize, p: u32) -> Result<S> {
    let an1 = f.a(n + 1)?;
    let an = f.a(n)?;
    let a2 = f.a(2)?;
    Ok(an1.powu(p) - (a2 * an).powu(p))
}

/// `a_n² − a_{2n−1} + P`; refuses perturbations whose catalog estimate
/// reaches `(n − 1)²/2`.
pub fn perturbed_zalcman<S: Scalar>(f: &SCoeffs<S>, n: usize, perturbation: &Perturbation) -> Result<S> {
    if perturbation.n() != n {
        return Err(Error::InvalidPerturbation(format!(
            "perturbation built for n = {}, used with n = {n}",
            perturbation.n()
        )));
    }
    perturbation.check_admissible()?;
    Ok(zalcman(f, n)? + perturbation.evaluate(f)?)
}

/// `J(f_t) = t^d J(f)`, exactly in exact mode and to 1e-12 in float mode.
pub fn verify_homogeneity<S: Scalar>(spec: &FunctionalSpec, f: &UnivalentSample<S>, t: &S) -> Result<bool> {
    let ft = homotopy_s(f, t)?;
    let lhs = spec.evaluate(ft.s()?)?;
    let rhs = t.powu(spec.degree()) * spec.evaluate(f.s()?)?;
    Ok(lhs.approx_eq(&rhs, 1e-12))
}

/// `bound − |value|`, exact when the value is exact and real.
pub fn slack<S: Scalar>(value: &S, bound: &Rational) -> f64 {
    rational_to_f64(bound) - value.modulus()
}

/// `true` iff `|value| ≤ bound` (exact) or `≤ bound (1 + rel_tol)` (float).
pub fn within_bound<S: Scalar>(value: &S, bound: &Rational, rel_tol: f64) -> bool {
    !value.cmp_modulus(bound, rel_tol).is_gt()
}

/// `true` iff `|value| = bound` under the mode's equality tolerance.
pub fn attains_bound<S: Scalar>(value: &S, bound: &Rational, rel_tol: f64) -> bool {
    value.cmp_modulus(bound, rel_tol).is_eq()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{koebe, odd_koebe};
    use crate::scalar::{Angle, ExactComplex};
    use num_traits::One;

    type Q = ExactComplex;

    fn koebe_q(order: usize) -> SCoeffs<Q> {
        koebe::<Q>(Angle::Zero, order).unwrap().s().unwrap().clone()
    }

    #[test]
    fn koebe_values() {
        let k = koebe_q(12);
        assert_eq!(zalcman(&k, 5).unwrap(), Q::from_i64(16));
        assert_eq!(power_gap(&k, 4, 1).unwrap(), Q::from_i64(-4));
        assert_eq!(power_gap(&k, 5, 2).unwrap(), Q::from_i64(25 - 256));
        assert_eq!(adjacent_gap(&k, 3, 1).unwrap(), Q::from_i64(-2));
        assert_eq!(adjacent_gap(&k, 4, 2).unwrap(), Q::from_i64(-39));
        let spec = FunctionalSpec::PowerGap { n: 5, p: 2 };
        assert_eq!(spec.bound(), Rational::from_integer(231.into()));
        assert_eq!(FunctionalSpec::AdjacentGap { n: 4, p: 2 }.bound(), Rational::from_integer(39.into()));
    }

    #[test]
    fn odd_koebe_values() {
        let odd = odd_koebe::<Q>(Angle::Pi, 9).unwrap();
        let z2 = zalcman(odd.s().unwrap(), 2).unwrap();
        assert_eq!(z2.modulus(), 1.0);
        assert_eq!(zalcman(odd_koebe::<Q>(Angle::Zero, 9).unwrap().s().unwrap(), 3).unwrap(), Q::zero());
    }

    #[test]
    fn perturbation_examples() {
        let p = Perturbation::parse(3, "1/10*a3^2").unwrap();
        let k = koebe_q(6);
        assert_eq!(perturbed_zalcman(&k, 3, &p).unwrap(), Q::from_ratio(49, 10));
        let odd = odd_koebe::<Q>(Angle::Zero, 6).unwrap();
        assert_eq!(perturbed_zalcman(odd.s().unwrap(), 3, &p).unwrap(), Q::from_ratio(1, 10));
        let spec = FunctionalSpec::Perturbed { n: 3, perturbation: p };
        assert_eq!(spec.bound(), Rational::new(49.into(), 10.into()));
    }

    #[test]
    fn perturbation_validation() {
        assert!(Perturbation::parse(3, "a3").is_err());
        assert!(Perturbation::parse(3, "-1/10*a3^2").is_err());
        assert!(Perturbation::parse(3, "a5^2").is_err());
        assert!(Perturbation::parse(4, "a3^3 + a4*a3 + 0*a5").is_err());
        assert!(Perturbation::parse(4, "1/100*a3^3 + 1/100*a4^2").is_ok());
        let big = Perturbation::parse(3, "1/2*a3^2").unwrap();
        assert!(matches!(
            perturbed_zalcman(&koebe_q(6), 3, &big),
            Err(Error::PerturbationTooLarge { .. })
        ));
    }

    #[test]
    fn homogeneity_degrees() {
        let k = koebe::<Q>(Angle::Zero, 10).unwrap();
        for spec in [
            FunctionalSpec::Zalcman { n: 3 },
            FunctionalSpec::PowerGap { n: 4, p: 2 },
            FunctionalSpec::AdjacentGap { n: 3, p: 2 },
        ] {
            assert!(verify_homogeneity(&spec, &k, &Q::from_ratio(1, 3)).unwrap());
            assert!(verify_homogeneity(&spec, &k, &Q::one()).unwrap());
        }
        assert_eq!(FunctionalSpec::AdjacentGap { n: 3, p: 2 }.degree(), 6);
        assert!(FunctionalSpec::from_name("power_gap", 3, 1, None).is_err());
    }
}
