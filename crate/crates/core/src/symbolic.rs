//! Integer polynomials in the Σ-coefficients `b_0, b_1, …` and the symbolic
//! expansion of the S-coefficients `a_n` they determine.
//!
//! Text form: terms sorted by descending exponent vector (so descending
//! `b_0`-degree first, then descending `b_1`-degree, …), factors written
//! in ascending variable order, e.g. `-b0^3 + 2*b0*b1 - b2`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::grammar::parse_terms;
use crate::scalar::{Rational, Scalar};

/// Exponent vector over `b_0, b_1, …` with trailing zeros trimmed, so two
/// monomials are equal iff their vectors are.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Number of variables touched (highest index + 1).
    pub fn width(&self) -> usize {
        self.0.len()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.exponent(i) + other.exponent(i)).collect())
    }
}

/// Sparse polynomial with integer coefficients over `b_0 … b_{nvars-1}`.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PartialEq for MultiPoly {
    /// Structural equality of the term maps; the variable bound is not
    /// compared.
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: impl Into<BigInt>, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(), c.into());
        p
    }

    /// The variable `b_index`; errors if `index >= nvars`.
    pub fn var(index: usize, nvars: usize) -> Result<Self> {
        if index >= nvars {
            return Err(Error::VariableOutOfBound { index, bound: nvars });
        }
        let mut e = vec![0; index + 1];
        e[index] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::new(e), BigInt::one());
        Ok(p)
    }

    /// Builds a polynomial from `(coefficient, monomial)` pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (BigInt, Monomial)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (c, m) in terms {
            if m.width() > nvars {
                return Err(Error::VariableOutOfBound { index: m.width() - 1, bound: nvars });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Parses the plain-text grammar from [`crate::grammar`]; coefficients
    /// must be integers.
    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(Self::zero(nvars));
        }
        let mut terms = Vec::new();
        for (c, exps) in parse_terms(s, 'b')? {
            if !c.is_integer() {
                return Err(Error::Parse(format!("non-integer coefficient {c} in `{s}`")));
            }
            let width = exps.keys().next_back().map_or(0, |&k| k + 1);
            let mut v = vec![0u32; width];
            for (k, e) in exps {
                v[k] = e;
            }
            terms.push((c.to_integer(), Monomial::new(v)));
        }
        Self::from_terms(nvars, terms)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Moves the polynomial into a ring with `nvars` variables.
    pub fn with_nvars(mut self, nvars: usize) -> Result<Self> {
        if let Some(w) = self.terms.keys().map(Monomial::width).max() {
            if w > nvars {
                return Err(Error::VariableOutOfBound { index: w - 1, bound: nvars });
            }
        }
        self.nvars = nvars;
        Ok(self)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.nvars = self.nvars.max(other.nvars);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars.max(other.nvars));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(1, self.nvars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Highest exponent of `b_var` over all terms (0 for the zero
    /// polynomial).
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    /// The sub-polynomial of terms whose `b_var` exponent is at least
    /// `min_degree`.
    pub fn terms_with_degree_at_least(&self, var: usize, min_degree: u32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(var) >= min_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Evaluates at `b = (b_0, b_1, …)`; needs at least `nvars` values.
    pub fn evaluate<S: Scalar>(&self, b: &[S]) -> Result<S> {
        if b.len() < self.nvars {
            return Err(Error::InsufficientOrder {
                needed: self.nvars.saturating_sub(1),
                available: b.len().saturating_sub(1),
            });
        }
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut t = S::from_rational(&Rational::from_integer(c.clone()));
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t * b[i].powu(e);
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { format!("b{v}") } else { format!("b{v}^{e}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `a_2, …, a_n` as polynomials in `b_0 … b_{n-2}`, all living in the
/// ring with `n - 1` variables.
///
/// Unwinds `b_k + Σ_{j=1}^{k} b_{k-j} a_{j+1} + a_{k+2} = 0` starting from
/// `a_2 = -b_0`. The recurrence is monic in `a_{k+2}`, so no division ever
/// occurs and the coefficients stay integral.
pub fn a_sequence_in_b(n: usize) -> Result<Vec<MultiPoly>> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange(format!("a_in_b needs n >= 2, got {n}")));
    }
    let nvars = n - 1;
    let b: Vec<MultiPoly> = (0..nvars).map(|i| MultiPoly::var(i, nvars)).collect::<Result<_>>()?;
    // a[i] holds a_{i+1}; a_1 = 1.
    let mut a: Vec<MultiPoly> = vec![MultiPoly::constant(1, nvars)];
    for k in 0..=n - 2 {
        let mut next = b[k].neg();
        for j in 1..=k {
            next = next.sub(&b[k - j].mul(&a[j]));
        }
        a.push(next);
    }
    Ok(a.split_off(1))
}

/// `a_n` as a polynomial in `b_0 … b_{n-2}`.
pub fn a_in_b(n: usize) -> Result<MultiPoly> {
    Ok(a_sequence_in_b(n)?.pop().expect("sequence is non-empty"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeadingStructure {
    /// `(-1)^{n-1}`.
    pub sign: i8,
    /// Terms of `b_0`-degree `n-1` and `n-3`.
    pub top: MultiPoly,
}

/// Extracts the two top-`b_0`-degree terms of `a_n` and checks them
/// against `(-1)^{n-1} b_0^{n-1} − (-1)^{n-1} (n-2) b_1 b_0^{n-3}`.
///
/// By weight counting (`b_j` has weight `j+1`, `a_n` weight `n-1`) there is
/// no term of `b_0`-degree `n-2`, so the top structure is exactly the terms
/// of degree at least `n-3`.
pub fn leading_structure(n: usize) -> Result<LeadingStructure> {
    if n < 3 {
        return Err(Error::ParameterOutOfRange(format!("leading_structure needs n >= 3, got {n}")));
    }
    let a = a_in_b(n)?;
    let top = a.terms_with_degree_at_least(0, (n - 3) as u32);
    let sign: i64 = if (n - 1) % 2 == 0 { 1 } else { -1 };
    let nvars = n - 1;
    let mut lead = vec![0u32; 1];
    lead[0] = (n - 1) as u32;
    let expected = MultiPoly::from_terms(
        nvars,
        [
            (BigInt::from(sign), Monomial::new(lead)),
            (BigInt::from(-sign * (n as i64 - 2)), Monomial::new(vec![(n - 3) as u32, 1])),
        ],
    )?;
    if top != expected {
        return Err(Error::StructureMismatch {
            n,
            expected: expected.to_string(),
            found: top.to_string(),
        });
    }
    Ok(LeadingStructure { sign: sign as i8, top })
}

/// `a_n² − a_{2n−1}` as a polynomial in `b_0 … b_{2n−3}`.
///
/// Its `b_0^{2n-2}` parts cancel and the unique remaining top-degree term
/// is `+b_1 b_0^{2n-4}`; this is verified before returning.
pub fn zalcman_in_b(n: usize) -> Result<MultiPoly> {
    if n < 3 {
        return Err(Error::ParameterOutOfRange(format!("zalcman_in_b needs n >= 3, got {n}")));
    }
    let seq = a_sequence_in_b(2 * n - 1)?;
    let an = &seq[n - 2];
    let a2n1 = &seq[2 * n - 3];
    let j = an.mul(an).sub(a2n1).with_nvars(2 * n - 2)?;
    let top_degree = j.degree_in(0);
    let top = j.terms_with_degree_at_least(0, top_degree);
    let expected = MultiPoly::from_terms(
        2 * n - 2,
        [(BigInt::one(), Monomial::new(vec![(2 * n - 4) as u32, 1]))],
    )?;
    if top_degree != (2 * n - 4) as u32 || top != expected {
        return Err(Error::StructureMismatch {
            n,
            expected: expected.to_string(),
            found: top.to_string(),
        });
    }
    Ok(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactComplex;

    #[test]
    fn low_order_expansions() {
        assert_eq!(a_in_b(2).unwrap().to_string(), "-b0");
        assert_eq!(a_in_b(3).unwrap().to_string(), "b0^2 - b1");
        assert_eq!(a_in_b(4).unwrap().to_string(), "-b0^3 + 2*b0*b1 - b2");
    }

    #[test]
    fn display_parse_round_trip() {
        for n in 2..=9 {
            let p = a_in_b(n).unwrap();
            let q = MultiPoly::parse(&p.to_string(), n - 1).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn variable_bound_is_enforced() {
        assert!(matches!(MultiPoly::var(3, 3), Err(Error::VariableOutOfBound { .. })));
        assert!(MultiPoly::parse("b5", 3).is_err());
        assert!(MultiPoly::parse("1/2*b0", 3).is_err());
        assert!(a_in_b(1).is_err());
    }

    #[test]
    fn leading_structure_small_cases() {
        let s3 = leading_structure(3).unwrap();
        assert_eq!(s3.sign, 1);
        assert_eq!(s3.top.to_string(), "b0^2 - b1");
        let s4 = leading_structure(4).unwrap();
        assert_eq!(s4.sign, -1);
        assert_eq!(s4.top.to_string(), "-b0^3 + 2*b0*b1");
        let s9 = leading_structure(9).unwrap();
        assert_eq!(s9.top.to_string(), "b0^8 - 7*b0^6*b1");
    }

    #[test]
    fn zalcman_top_term() {
        let j3 = zalcman_in_b(3).unwrap();
        let top = j3.terms_with_degree_at_least(0, j3.degree_in(0));
        assert_eq!(top.to_string(), "b0^2*b1");
        let j4 = zalcman_in_b(4).unwrap();
        assert_eq!(j4.coefficient(&Monomial::new(vec![4, 1])), BigInt::one());
    }

    #[test]
    fn zalcman_at_koebe_inversion() {
        for n in 3..=8usize {
            let j = zalcman_in_b(n).unwrap();
            let mut b = vec![ExactComplex::zero(); 2 * n - 2];
            b[0] = ExactComplex::from_i64(-2);
            b[1] = ExactComplex::from_i64(1);
            let expected = ExactComplex::from_i64(((n - 1) * (n - 1)) as i64);
            assert_eq!(j.evaluate(&b).unwrap(), expected);
        }
    }
}
