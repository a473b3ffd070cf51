//! Explicit extremal families, the two holomorphic homotopies, and a seeded
//! sampler of starlike functions.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeffs::{SCoeffs, SigmaCoeffs};
use crate::error::{Error, Result};
use crate::scalar::{Angle, ExactComplex, Mode, Rational, Scalar};
use crate::series::TruncSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Klass {
    S,
    Sigma,
}

impl Klass {
    pub fn name(self) -> &'static str {
        match self {
            Klass::S => "S",
            Klass::Sigma => "Sigma",
        }
    }
}

impl fmt::Display for Klass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SampleCoeffs<S> {
    S(SCoeffs<S>),
    Sigma(SigmaCoeffs<S>),
}

/// A generated function with enough provenance to rebuild it.
#[derive(Clone, Debug, PartialEq)]
pub struct UnivalentSample<S> {
    pub coeffs: SampleCoeffs<S>,
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub seed: Option<u64>,
}

impl<S: Scalar> UnivalentSample<S> {
    fn new(coeffs: SampleCoeffs<S>, family: &str, params: Vec<(&str, String)>) -> Self {
        Self {
            coeffs,
            family: family.to_string(),
            params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            seed: None,
        }
    }

    pub fn klass(&self) -> Klass {
        match self.coeffs {
            SampleCoeffs::S(_) => Klass::S,
            SampleCoeffs::Sigma(_) => Klass::Sigma,
        }
    }

    pub fn s(&self) -> Result<&SCoeffs<S>> {
        match &self.coeffs {
            SampleCoeffs::S(a) => Ok(a),
            SampleCoeffs::Sigma(_) => Err(Error::WrongClass { expected: "S", found: "Sigma" }),
        }
    }

    pub fn sigma(&self) -> Result<&SigmaCoeffs<S>> {
        match &self.coeffs {
            SampleCoeffs::Sigma(b) => Ok(b),
            SampleCoeffs::S(_) => Err(Error::WrongClass { expected: "Sigma", found: "S" }),
        }
    }

    /// Short human-readable label, e.g. `koebe_root(m=3,theta=0)`.
    pub fn label(&self) -> String {
        let p: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        match self.seed {
            Some(s) if p.is_empty() => format!("{}(seed={s})", self.family),
            Some(s) => format!("{}({},seed={s})", self.family, p.join(",")),
            None => format!("{}({})", self.family, p.join(",")),
        }
    }

    /// Rebuilds the sample from `family`, `params` and `seed` at the same
    /// truncation order.
    pub fn regenerate(&self) -> Result<Self> {
        let order = match &self.coeffs {
            SampleCoeffs::S(a) => a.order(),
            SampleCoeffs::Sigma(b) => b.order(),
        };
        regenerate(&self.family, &self.params, self.seed, order)
    }
}

fn param<'a>(params: &'a BTreeMap<String, String>, key: &str) -> Result<&'a str> {
    params
        .get(key)
        .map(String::as_str)
        .ok_or_else(|| Error::Parse(format!("missing parameter `{key}`")))
}

fn param_usize(params: &BTreeMap<String, String>, key: &str) -> Result<usize> {
    param(params, key)?
        .parse()
        .map_err(|e| Error::Parse(format!("parameter `{key}`: {e}")))
}

/// Inverse of the provenance recorded by the generators in this module.
pub fn regenerate<S: Scalar>(
    family: &str,
    params: &BTreeMap<String, String>,
    seed: Option<u64>,
    order: usize,
) -> Result<UnivalentSample<S>> {
    let angle = |k: &str| -> Result<Angle> { param(params, k)?.parse() };
    let scalar = |k: &str| -> Result<S> { S::parse_str(param(params, k)?) };
    match family {
        "identity" => Ok(identity(order)),
        "koebe" => koebe(angle("theta")?, order),
        "odd_koebe" => odd_koebe(angle("theta")?, order),
        "koebe_root" => koebe_root(param_usize(params, "m")?, angle("theta")?, order),
        "two_coeff_sigma" => two_coeff_sigma(scalar("b0")?, scalar("b1")?, order),
        "f_root_small" => f_root_small(param_usize(params, "m")?, scalar("t")?, order),
        "small_dilatation" => small_dilatation(
            param_usize(params, "n")?,
            &crate::scalar::parse_rational(param(params, "k")?)?,
            scalar("t")?,
            order,
        ),
        "starlike" => {
            let seed = seed.ok_or_else(|| Error::Parse("starlike sample without seed".into()))?;
            match params.get("k") {
                Some(_) if params.contains_key("random_k") => recast(starlike_random(seed, order)?),
                Some(_) => recast(starlike_sample(seed, param_usize(params, "k")?, order)?),
                None => Err(Error::Parse("starlike sample without k".into())),
            }
        }
        "starlike_exact" => {
            let seed = seed.ok_or_else(|| Error::Parse("starlike sample without seed".into()))?;
            recast(starlike_sample_exact(seed, order)?)
        }
        "starlike_weights" => {
            let angles: Vec<Angle> = split_list(param(params, "thetas")?)
                .map(str::parse)
                .collect::<Result<_>>()?;
            let weights: Vec<S> = split_list(param(params, "lambdas")?)
                .map(S::parse_str)
                .collect::<Result<_>>()?;
            starlike_with_weights(&angles, &weights, order)
        }
        "homotopy_s" | "homotopy_sigma" => {
            let base_family = param(params, "base")?;
            let base_params: BTreeMap<String, String> = params
                .iter()
                .filter_map(|(k, v)| k.strip_prefix("base.").map(|k| (k.to_string(), v.clone())))
                .collect();
            let base = regenerate::<S>(base_family, &base_params, seed, order)?;
            let t = scalar("t")?;
            if family == "homotopy_s" {
                homotopy_s(&base, &t)
            } else {
                homotopy_sigma(&base, &t)
            }
        }
        other => Err(Error::Parse(format!("unknown family `{other}`"))),
    }
}

/// Moves a sample between two scalar types of the same mode.
fn recast<T: Scalar, S: Scalar>(s: UnivalentSample<T>) -> Result<UnivalentSample<S>> {
    if T::MODE != S::MODE {
        return Err(Error::Parse(format!("family `{}` exists only in {} mode", s.family, T::MODE)));
    }
    let conv = |v: &[T]| -> Result<Vec<S>> { v.iter().map(|x| S::from_json(&x.to_json())).collect() };
    let coeffs = match &s.coeffs {
        SampleCoeffs::S(a) => SampleCoeffs::S(SCoeffs::new(conv(a.tail())?)),
        SampleCoeffs::Sigma(b) => SampleCoeffs::Sigma(SigmaCoeffs::new(conv(b.coeffs())?)),
    };
    Ok(UnivalentSample { coeffs, family: s.family, params: s.params, seed: s.seed })
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.trim_matches(|c| c == '[' || c == ']').split(';').map(str::trim)
}

fn join_list(items: impl IntoIterator<Item = String>) -> String {
    format!("[{}]", items.into_iter().collect::<Vec<_>>().join(";"))
}

fn check_order(order: usize, needed: usize) -> Result<()> {
    if order < needed {
        return Err(Error::InsufficientOrder { needed, available: order });
    }
    Ok(())
}

fn check_closed_disk<S: Scalar>(t: &S, what: &str) -> Result<()> {
    if t.cmp_modulus(&Rational::one(), 1e-12).is_gt() {
        return Err(Error::ParameterOutOfRange(format!("{what} needs |t| <= 1, got {}", t.modulus())));
    }
    Ok(())
}

/// `z ↦ z(1 − u z^m)^{α}` truncated at `z^order`.
fn root_product<S: Scalar>(u: &S, m: usize, alpha: &S, order: usize) -> Result<SCoeffs<S>> {
    let inner_order = (order - 1) / m;
    let mut base = TruncSeries::<S>::one(inner_order);
    if inner_order >= 1 {
        base = base.sub(&TruncSeries::monomial(u.clone(), 1, inner_order));
    }
    let g = base.pow_scalar(alpha)?.substitute_power_into(m, order - 1);
    let mut a = g.into_coeffs();
    a.insert(0, S::zero());
    SCoeffs::from_series(&TruncSeries::new(a))
}

pub fn identity<S: Scalar>(order: usize) -> UnivalentSample<S> {
    UnivalentSample::new(SampleCoeffs::S(SCoeffs::identity(order)), "identity", vec![])
}

/// `κ_θ`, with `a_n = n e^{-i(n-1)θ}`.
pub fn koebe<S: Scalar>(theta: Angle, order: usize) -> Result<UnivalentSample<S>> {
    check_order(order, 2)?;
    let u = S::unimodular(theta.negate())?;
    let mut a = Vec::with_capacity(order - 1);
    let mut p = u.clone();
    for n in 2..=order {
        a.push(S::from_i64(n as i64) * p.clone());
        p = p * u.clone();
    }
    Ok(UnivalentSample::new(
        SampleCoeffs::S(SCoeffs::new(a)),
        "koebe",
        vec![("theta", theta.to_string())],
    ))
}

/// `κ_{m,θ}(z) = z(1 − e^{iθ} z^m)^{-2/m}`; needs `order ≥ 2m + 1`.
pub fn koebe_root<S: Scalar>(m: usize, theta: Angle, order: usize) -> Result<UnivalentSample<S>> {
    if m == 0 {
        return Err(Error::ParameterOutOfRange("koebe_root needs m >= 1".into()));
    }
    check_order(order, 2 * m + 1)?;
    let u = S::unimodular(theta)?;
    let alpha = S::from_ratio(-2, m as i64);
    let a = root_product(&u, m, &alpha, order)?;
    Ok(UnivalentSample::new(
        SampleCoeffs::S(a),
        "koebe_root",
        vec![("m", m.to_string()), ("theta", theta.to_string())],
    ))
}

/// The odd Koebe function `z/(1 − e^{iθ} z²)`.
pub fn odd_koebe<S: Scalar>(theta: Angle, order: usize) -> Result<UnivalentSample<S>> {
    let mut s = koebe_root(2, theta, order.max(5))?;
    if order < 5 {
        s.coeffs = SampleCoeffs::S(s.s()?.truncate(order.max(2))?);
    }
    s.family = "odd_koebe".into();
    s.params.remove("m");
    Ok(s)
}

/// `F(z) = z + b_0 + b_1/z`, tail padded with zeros to `b_order`.
pub fn two_coeff_sigma<S: Scalar>(b0: S, b1: S, order: usize) -> Result<UnivalentSample<S>> {
    if b1.cmp_modulus(&Rational::one(), 1e-12).is_gt() {
        return Err(Error::DilatationExceedsOne(b1.modulus()));
    }
    let mut b = vec![S::zero(); order.max(1) + 1];
    let params = vec![("b0", b0.to_param()), ("b1", b1.to_param())];
    b[0] = b0;
    b[1] = b1;
    Ok(UnivalentSample::new(SampleCoeffs::Sigma(SigmaCoeffs::new(b)), "two_coeff_sigma", params))
}

/// `F_{m,t}(z) = z(1 − t z^{-(m+1)})^{2/(m+1)}`, tail to `b_order`.
pub fn f_root_small<S: Scalar>(m: usize, t: S, order: usize) -> Result<UnivalentSample<S>> {
    if m == 0 {
        return Err(Error::ParameterOutOfRange("f_root_small needs m >= 1".into()));
    }
    check_closed_disk(&t, "f_root_small")?;
    check_order(order, m)?;
    let w_order = order + 1;
    let mut base = TruncSeries::<S>::one(w_order);
    if m + 1 <= w_order {
        base = base.sub(&TruncSeries::monomial(t.clone(), m + 1, w_order));
    }
    let g = base.pow_rational(2, (m + 1) as u64)?;
    let b = SigmaCoeffs::from_w_series(&g)?;
    Ok(UnivalentSample::new(
        SampleCoeffs::Sigma(b),
        "f_root_small",
        vec![("m", m.to_string()), ("t", t.to_param())],
    ))
}

/// `f_{n-1,t}(z) = z(1 − k t z^{n-1})^{-2/(n-1)}` for `0 < k ≤ 1/(n²+1)`,
/// `|t| = 1`.
pub fn small_dilatation<S: Scalar>(n: usize, k: &Rational, t: S, order: usize) -> Result<UnivalentSample<S>> {
    if n < 3 {
        return Err(Error::ParameterOutOfRange(format!("small_dilatation needs n >= 3, got {n}")));
    }
    let kmax = Rational::new(1.into(), ((n * n + 1) as i64).into());
    if *k <= Rational::zero() || *k > kmax {
        return Err(Error::ParameterOutOfRange(format!("k = {k} outside (0, {kmax}]")));
    }
    if t.cmp_modulus(&Rational::one(), 1e-12).is_ne() {
        return Err(Error::ParameterOutOfRange(format!("t must be unimodular, |t| = {}", t.modulus())));
    }
    check_order(order, n)?;
    let u = S::from_rational(k) * t.clone();
    let alpha = S::from_ratio(-2, (n - 1) as i64);
    let a = root_product(&u, n - 1, &alpha, order)?;
    Ok(UnivalentSample::new(
        SampleCoeffs::S(a),
        "small_dilatation",
        vec![("n", n.to_string()), ("k", k.to_string()), ("t", t.to_param())],
    ))
}

fn homotopy_params<S>(base: &UnivalentSample<S>, t: String) -> BTreeMap<String, String> {
    let mut p: BTreeMap<String, String> =
        base.params.iter().map(|(k, v)| (format!("base.{k}"), v.clone())).collect();
    p.insert("base".into(), base.family.clone());
    p.insert("t".into(), t);
    p
}

/// `f_t(z) = t^{-1} f(tz)`: `a_n ↦ a_n t^{n-1}`.
pub fn homotopy_s<S: Scalar>(f: &UnivalentSample<S>, t: &S) -> Result<UnivalentSample<S>> {
    let a = f.s()?;
    check_closed_disk(t, "homotopy_s")?;
    Ok(UnivalentSample {
        coeffs: SampleCoeffs::S(a.scale_by_powers(t)),
        family: "homotopy_s".into(),
        params: homotopy_params(f, t.to_param()),
        seed: f.seed,
    })
}

/// `F_t(z) = t F(z/t)`: `b_j ↦ b_j t^{j+1}`.
pub fn homotopy_sigma<S: Scalar>(f: &UnivalentSample<S>, t: &S) -> Result<UnivalentSample<S>> {
    let b = f.sigma()?;
    check_closed_disk(t, "homotopy_sigma")?;
    Ok(UnivalentSample {
        coeffs: SampleCoeffs::Sigma(b.scale_by_powers(t)),
        family: "homotopy_sigma".into(),
        params: homotopy_params(f, t.to_param()),
        seed: f.seed,
    })
}

/// `z Π_k (1 − e^{iθ_k} z)^{-2λ_k}`; the weights must be nonnegative and
/// sum to 1 (checked in float arithmetic to 1e-12, exactly otherwise).
pub fn starlike_with_weights<S: Scalar>(thetas: &[Angle], lambdas: &[S], order: usize) -> Result<UnivalentSample<S>> {
    if thetas.is_empty() || thetas.len() != lambdas.len() {
        return Err(Error::ParameterOutOfRange("need one weight per angle, at least one".into()));
    }
    let total = lambdas.iter().cloned().fold(S::zero(), |a, b| a + b);
    if !total.approx_eq(&S::one(), 1e-12) {
        return Err(Error::ParameterOutOfRange("starlike weights must sum to 1".into()));
    }
    for l in lambdas {
        let c = l.to_c64();
        if c.re < 0.0 || c.im.abs() > 1e-15 {
            return Err(Error::ParameterOutOfRange("starlike weights must be nonnegative reals".into()));
        }
    }
    let product = starlike_product(thetas, lambdas, order)?;
    Ok(UnivalentSample::new(
        SampleCoeffs::S(product),
        "starlike_weights",
        vec![
            ("thetas", join_list(thetas.iter().map(Angle::to_string))),
            ("lambdas", join_list(lambdas.iter().map(Scalar::to_param))),
        ],
    ))
}

fn starlike_product<S: Scalar>(thetas: &[Angle], lambdas: &[S], order: usize) -> Result<SCoeffs<S>> {
    check_order(order, 2)?;
    let mut acc = TruncSeries::<S>::one(order - 1);
    for (theta, lambda) in thetas.iter().zip(lambdas) {
        if lambda.is_zero() {
            continue;
        }
        let u = S::unimodular(*theta)?;
        let base = TruncSeries::one(order - 1).sub(&TruncSeries::monomial(u, 1, order - 1));
        let alpha = S::from_i64(-2) * lambda.clone();
        acc = acc.mul(&base.pow_scalar(&alpha)?);
    }
    let mut a = acc.into_coeffs();
    a.insert(0, S::zero());
    SCoeffs::from_series(&TruncSeries::new(a))
}

/// Float-mode starlike sample with `k` factors: angles uniform in
/// `[0, 2π)`, weights uniform on the simplex (normalized `Exp(1)` draws).
pub fn starlike_sample(seed: u64, k: usize, order: usize) -> Result<UnivalentSample<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = draw_starlike(&mut rng, k, order)?;
    s.seed = Some(seed);
    s.params.insert("k".into(), k.to_string());
    Ok(s)
}

/// As [`starlike_sample`] with `k` itself drawn uniformly from `1..=6`.
pub fn starlike_random(seed: u64, order: usize) -> Result<UnivalentSample<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.random_range(1..=6);
    let mut s = draw_starlike(&mut rng, k, order)?;
    s.seed = Some(seed);
    s.params.insert("k".into(), k.to_string());
    s.params.insert("random_k".into(), "1..=6".into());
    Ok(s)
}

fn draw_starlike(rng: &mut ChaCha8Rng, k: usize, order: usize) -> Result<UnivalentSample<Complex64>> {
    if k == 0 {
        return Err(Error::ParameterOutOfRange("starlike sampler needs k >= 1".into()));
    }
    let thetas: Vec<Angle> = (0..k).map(|_| Angle::Radians(rng.random_range(0.0..TAU))).collect();
    let raw: Vec<f64> = (0..k).map(|_| Exp1.sample(rng)).collect();
    let sum: f64 = raw.iter().sum();
    let lambdas: Vec<Complex64> = raw.iter().map(|x| Complex64::new(x / sum, 0.0)).collect();
    let a = starlike_product(&thetas, &lambdas, order)?;
    Ok(UnivalentSample::new(SampleCoeffs::S(a), "starlike", vec![]))
}

/// Exact-mode starlike sample: `k ∈ 1..=6` factors with angles in
/// `{0, π}` and weights `c_j / Σc` for integers `c_j ∈ 1..=12`.
pub fn starlike_sample_exact(seed: u64, order: usize) -> Result<UnivalentSample<ExactComplex>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.random_range(1..=6usize);
    let mut weight = [0i64; 2];
    let mut total = 0i64;
    let mut angles = Vec::with_capacity(k);
    for _ in 0..k {
        let pi = rng.random_bool(0.5);
        let c: i64 = rng.random_range(1..=12);
        weight[pi as usize] += c;
        total += c;
        angles.push(if pi { "pi" } else { "0" });
    }
    // Factors with equal angles merge into one power.
    let lambdas = [ExactComplex::from_ratio(weight[0], total), ExactComplex::from_ratio(weight[1], total)];
    let a = two_point_starlike(&lambdas[0].re, &lambdas[1].re, order)?;
    let mut s = UnivalentSample::new(
        SampleCoeffs::S(a),
        "starlike_exact",
        vec![
            ("k", k.to_string()),
            ("lambda_0", lambdas[0].to_param()),
            ("lambda_pi", lambdas[1].to_param()),
        ],
    );
    s.seed = Some(seed);
    Ok(s)
}

/// `z (1 − z)^{-2λ₀} (1 + z)^{-2λ₁}` from the recurrence implied by
/// `g'(1 − z²) = g ((A + B) + (A − B) z)`, `A = 2λ₀`, `B = −2λ₁`.
fn two_point_starlike(l0: &Rational, l1: &Rational, order: usize) -> Result<SCoeffs<ExactComplex>> {
    check_order(order, 2)?;
    let two = Rational::from_integer(2.into());
    let (a, b) = (&two * l0, -(&two * l1));
    let (sum, diff) = (&a + &b, &a - &b);
    let mut g = vec![Rational::one()];
    let mut prev = Rational::zero();
    for n in 0..order - 1 {
        let cur = g[n].clone();
        let shift = &diff + Rational::from_integer((n as i64 - 1).into());
        let next = (&sum * &cur + shift * &prev) / Rational::from_integer((n as i64 + 1).into());
        g.push(next);
        prev = cur;
    }
    g.remove(0);
    Ok(SCoeffs::new(g.into_iter().map(|x| ExactComplex::new(x, Rational::zero())).collect()))
}

/// Per-sample seed derived from a base seed and the sample index.
pub fn splitmix64(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Scalars that have a seeded starlike sampler.
pub trait Sampled: Scalar {
    fn starlike(seed: u64, order: usize) -> Result<UnivalentSample<Self>>;
}

impl Sampled for Complex64 {
    fn starlike(seed: u64, order: usize) -> Result<UnivalentSample<Self>> {
        starlike_random(seed, order)
    }
}

impl Sampled for ExactComplex {
    fn starlike(seed: u64, order: usize) -> Result<UnivalentSample<Self>> {
        starlike_sample_exact(seed, order)
    }
}

/// `count` starlike samples; sample `i` uses seed `splitmix64(seed, i)`.
/// Generation runs on the current rayon pool; output order is by index.
pub fn batch<S: Sampled>(seed: u64, count: usize, order: usize) -> Result<Vec<UnivalentSample<S>>> {
    (0..count as u64)
        .into_par_iter()
        .map(|i| S::starlike(splitmix64(seed, i), order))
        .collect()
}

/// Fixed S-class catalog: Koebe rotations, root transforms `m ≤ 6`, the
/// odd Koebe function, the identity, a two-point starlike map, and
/// homotopies of the Koebe and root functions at `t ∈ {1/4, 1/2, 3/4}`.
///
/// Exact mode uses `θ ∈ {0, π}`; float mode adds three generic angles.
/// `order` is raised to 13 if necessary so every root transform is defined.
pub fn catalog<S: Scalar>(order: usize) -> Result<Vec<UnivalentSample<S>>> {
    let order = order.max(13);
    let mut angles = vec![Angle::Zero, Angle::Pi];
    if S::MODE == Mode::Float {
        angles.extend([Angle::Radians(0.7), Angle::Radians(2.1), Angle::Radians(4.0)]);
    }
    let mut out = vec![identity(order)];
    for &theta in &angles {
        out.push(koebe(theta, order)?);
        out.push(odd_koebe(theta, order)?);
        for m in 3..=6 {
            out.push(koebe_root(m, theta, order)?);
        }
    }
    let half = S::from_ratio(1, 2);
    out.push(starlike_with_weights(&[Angle::Zero, Angle::Pi], &[half.clone(), half], order)?);
    let bases = [koebe(Angle::Zero, order)?, odd_koebe(Angle::Zero, order)?, koebe_root(3, Angle::Zero, order)?];
    for base in &bases {
        for (p, q) in [(1, 4), (1, 2), (3, 4)] {
            out.push(homotopy_s(base, &S::from_ratio(p, q))?);
        }
    }
    Ok(out)
}

/// Σ-class catalog: Koebe inversions, two-coefficient maps, the root
/// family `F_{m,t}` and their homotopies.
pub fn sigma_catalog<S: Scalar>(order: usize) -> Result<Vec<UnivalentSample<S>>> {
    let order = order.max(7);
    let mut out = vec![
        two_coeff_sigma(S::from_i64(-2), S::one(), order)?,
        two_coeff_sigma(S::from_i64(2), S::one(), order)?,
        two_coeff_sigma(S::zero(), S::one(), order)?,
        two_coeff_sigma(S::zero(), S::from_ratio(1, 2), order)?,
        two_coeff_sigma(S::from_ratio(1, 3), S::from_ratio(-2, 3), order)?,
    ];
    for m in 1..=6 {
        out.push(f_root_small(m, S::one(), order)?);
        out.push(f_root_small(m, S::from_ratio(-1, 2), order)?);
    }
    let base = out[0].clone();
    out.push(homotopy_sigma(&base, &S::from_ratio(1, 2))?);
    Ok(out)
}

/// `|a_2| = 2` and `a_n = n (a_2/2)^{n-1}` for every available `n`, i.e.
/// the coefficients of some Koebe rotation. Exact comparison in exact mode,
/// relative `rel_tol` in float mode.
pub fn is_koebe_rotation<S: Scalar>(f: &SCoeffs<S>, rel_tol: f64) -> bool {
    let a2 = match f.a(2) {
        Ok(a) => a,
        Err(_) => return false,
    };
    if a2.cmp_modulus(&Rational::from_integer(2.into()), rel_tol).is_ne() {
        return false;
    }
    let u = a2 * S::from_ratio(1, 2);
    let mut p = u.clone();
    for n in 3..=f.order() {
        p = p * u.clone();
        let expected = S::from_i64(n as i64) * p.clone();
        let actual = f.a(n).expect("index within order");
        if !actual.approx_eq(&expected, rel_tol) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::s_to_sigma;

    type Q = ExactComplex;

    fn q(n: i64, d: i64) -> Q {
        Q::from_ratio(n, d)
    }

    #[test]
    fn two_point_recurrence_matches_product() {
        for (w0, w1) in [(7, 5), (12, 0), (0, 3), (1, 1)] {
            let l = [q(w0, w0 + w1), q(w1, w0 + w1)];
            let direct = starlike_product(&[Angle::Zero, Angle::Pi], &l, 15).unwrap();
            assert_eq!(two_point_starlike(&l[0].re, &l[1].re, 15).unwrap(), direct);
        }
    }

    #[test]
    fn koebe_signs() {
        let k = koebe::<Q>(Angle::Pi, 6).unwrap();
        let a = k.s().unwrap();
        for n in 2..=6 {
            let expected = if n % 2 == 0 { -(n as i64) } else { n as i64 };
            assert_eq!(a.a(n).unwrap(), Q::from_i64(expected));
        }
        let b = s_to_sigma(koebe::<Q>(Angle::Zero, 8).unwrap().s().unwrap());
        assert_eq!(b.coeffs()[..3], [Q::from_i64(-2), Q::from_i64(1), Q::from_i64(0)]);
    }

    #[test]
    fn root_transform_coefficients() {
        let odd = odd_koebe::<Q>(Angle::Zero, 8).unwrap();
        let expect: Vec<Q> = [0, 1, 0, 1, 0, 1, 0].iter().map(|&x| Q::from_i64(x)).collect();
        assert_eq!(odd.s().unwrap().tail(), expect.as_slice());
        let r3 = koebe_root::<Q>(3, Angle::Pi, 7).unwrap();
        assert_eq!(r3.s().unwrap().a(4).unwrap(), q(-2, 3));
        assert_eq!(r3.s().unwrap().a(7).unwrap(), q(5, 9));
        assert!(koebe_root::<Q>(3, Angle::Zero, 6).is_err());
    }

    #[test]
    fn sigma_families() {
        assert!(matches!(
            two_coeff_sigma(Q::zero(), q(3, 2), 3),
            Err(Error::DilatationExceedsOne(_))
        ));
        let f = f_root_small(3, Q::one(), 6).unwrap();
        assert_eq!(f.sigma().unwrap().b(3).unwrap(), q(-1, 2));
        assert_eq!(f.sigma().unwrap().b(1).unwrap(), Q::zero());
        let id = f_root_small(2, Q::zero(), 5).unwrap();
        assert!(id.sigma().unwrap().coeffs().iter().all(Zero::is_zero));
    }

    #[test]
    fn small_dilatation_coefficient() {
        let k = Rational::new(1.into(), 26.into());
        let f = small_dilatation(5, &k, Q::one(), 9).unwrap();
        assert_eq!(f.s().unwrap().a(5).unwrap(), q(1, 52));
        assert_eq!(f.s().unwrap().a(2).unwrap(), Q::zero());
        assert!(small_dilatation(5, &Rational::new(1.into(), 20.into()), Q::one(), 9).is_err());
        assert!(small_dilatation(5, &k, q(1, 2), 9).is_err());
    }

    #[test]
    fn homotopies() {
        let k = koebe::<Q>(Angle::Zero, 6).unwrap();
        let h = homotopy_s(&k, &q(1, 2)).unwrap();
        assert_eq!(h.s().unwrap().a(5).unwrap(), q(5, 16));
        assert!(matches!(homotopy_sigma(&k, &q(1, 2)), Err(Error::WrongClass { .. })));
        assert!(homotopy_s(&k, &q(3, 2)).is_err());
        let id = homotopy_s(&k, &Q::zero()).unwrap();
        assert!(id.s().unwrap().tail().iter().all(Zero::is_zero));
        assert_eq!(h.regenerate().unwrap(), h);
    }

    #[test]
    fn starlike_examples() {
        let two = starlike_with_weights(&[Angle::Zero, Angle::Pi], &[q(1, 2), q(1, 2)], 6).unwrap();
        assert_eq!(two.s().unwrap().a(2).unwrap(), Q::zero());
        assert_eq!(two.s().unwrap().a(3).unwrap(), Q::one());
        let one = starlike_with_weights(&[Angle::Zero], &[Q::one()], 6).unwrap();
        assert_eq!(one.s().unwrap(), koebe::<Q>(Angle::Zero, 6).unwrap().s().unwrap());
    }

    #[test]
    fn sampler_is_deterministic_and_bounded() {
        for seed in 0..50 {
            let s = starlike_random(seed, 8).unwrap();
            assert_eq!(s.regenerate().unwrap(), s);
            for n in 2..=8 {
                assert!(s.s().unwrap().a(n).unwrap().norm() <= n as f64 + 1e-9);
            }
            let e = starlike_sample_exact(seed, 8).unwrap();
            assert_eq!(e.regenerate().unwrap(), e);
        }
    }

    #[test]
    fn koebe_rotation_detection() {
        assert!(is_koebe_rotation(koebe::<Q>(Angle::Pi, 9).unwrap().s().unwrap(), 0.0));
        assert!(is_koebe_rotation(koebe::<Complex64>(Angle::Radians(0.3), 9).unwrap().s().unwrap(), 1e-9));
        assert!(is_koebe_rotation(koebe_root::<Complex64>(1, Angle::Radians(0.3), 9).unwrap().s().unwrap(), 1e-9));
        assert!(!is_koebe_rotation(odd_koebe::<Q>(Angle::Zero, 9).unwrap().s().unwrap(), 0.0));
    }
}
