//! Truncated power series `c_0 + c_1 z + … + c_N z^N + O(z^{N+1})`.
//!
//! Binary operations truncate to the smaller order of their operands and
//! never report coefficients past it. In exact mode every operation is
//! exact; float mode inherits the usual rounding.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<S> {
    coeffs: Vec<S>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl<S: Scalar> TruncSeries<S> {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    ///
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(vec![S::zero(); order + 1])
    }

    pub fn constant(c: S, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(S::one(), order)
    }

    /// `c · z^k` to the given order (zero if `k > order`).
    pub fn monomial(c: S, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// The identity map `z`.
    pub fn identity(order: usize) -> Self {
        Self::monomial(S::one(), 1, order)
    }

    /// Builds a series from a coefficient function `k ↦ c_k`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> S) -> Self {
        Self::new((0..=order).map(f).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of `z^k`; errors past the truncation order.
    pub fn coeff(&self, k: usize) -> Result<&S> {
        self.coeffs.get(k).ok_or(Error::InsufficientOrder {
            needed: k,
            available: self.order(),
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self::new(self.coeffs[..=n].to_vec())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| self.coeffs[k].clone() + other.coeffs[k].clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| self.coeffs[k].clone() - other.coeffs[k].clone())
    }

    /// Cauchy product truncated to `min(N_a, N_b)`.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![S::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        Self::new(out)
    }

    /// `1 / self` by long division.
    pub fn reciprocal(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].inv().ok_or(Error::DivisionByZeroConstantTerm)?;
        let n = self.order();
        let mut out: Vec<S> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = S::zero();
            for j in 1..=k {
                let b = &self.coeffs[j];
                if !b.is_zero() {
                    acc = acc + b.clone() * out[k - j].clone();
                }
            }
            out.push(-(acc * inv0.clone()));
        }
        Ok(Self::new(out))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.reciprocal()?))
    }

    pub fn arithmetic(&self, other: &Self, op: ArithOp) -> Result<Self> {
        match op {
            ArithOp::Add => Ok(self.add(other)),
            ArithOp::Sub => Ok(self.sub(other)),
            ArithOp::Mul => Ok(self.mul(other)),
            ArithOp::Div => self.div(other),
        }
    }

    /// `self ∘ inner` by Horner accumulation; `inner(0)` must vanish.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroInnerConstant);
        }
        let n = self.order().min(inner.order());
        let g = inner.truncate(n);
        let mut acc = Self::constant(self.coeffs[n].clone(), n);
        for k in (0..n).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[k].clone();
        }
        Ok(acc)
    }

    /// `self^α` on the principal branch, for `self(0) = 1`.
    ///
    /// Uses `n g_n = Σ_{k=1}^{n} (α k − (n − k)) f_k g_{n−k}`, which follows
    /// from `f g' = α f' g`.
    pub fn pow_scalar(&self, alpha: &S) -> Result<Self> {
        if self.coeffs[0] != S::one() {
            return Err(Error::NonUnitConstantTerm);
        }
        let n = self.order();
        let mut g: Vec<S> = Vec::with_capacity(n + 1);
        g.push(S::one());
        for m in 1..=n {
            let mut acc = S::zero();
            for k in 1..=m {
                let f = &self.coeffs[k];
                if f.is_zero() {
                    continue;
                }
                let w = alpha.clone() * S::from_i64(k as i64) - S::from_i64((m - k) as i64);
                acc = acc + w * f.clone() * g[m - k].clone();
            }
            g.push(acc * S::from_ratio(1, m as i64));
        }
        Ok(Self::new(g))
    }

    /// `self^{p/q}` on the principal branch, for `self(0) = 1`.
    pub fn pow_rational(&self, p: i64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::ParameterOutOfRange("denominator q must be positive".into()));
        }
        let alpha = S::from_rational(&Rational::new(p.into(), q.into()));
        self.pow_scalar(&alpha)
    }

    /// Termwise derivative, order `N − 1` (a zero series of order 0 when
    /// `N = 0`).
    pub fn differentiate(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(0);
        }
        Self::from_fn(n - 1, |k| self.coeffs[k + 1].clone() * S::from_i64(k as i64 + 1))
    }

    /// `f(z) ↦ f(c z)`.
    pub fn dilate(&self, c: &S) -> Self {
        let mut p = S::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            out.push(x.clone() * p.clone());
            p = p * c.clone();
        }
        Self::new(out)
    }

    /// `f(z) ↦ f(z^m)` to the same order.
    pub fn substitute_power(&self, m: usize) -> Self {
        assert!(m >= 1);
        let n = self.order();
        let mut out = vec![S::zero(); n + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if k * m > n {
                break;
            }
            out[k * m] = c.clone();
        }
        Self::new(out)
    }

    /// `f(z) ↦ f(z^m)` extended to `order`; every coefficient up to `order`
    /// must be determined, i.e. `(N + 1) m > order`.
    pub fn substitute_power_into(&self, m: usize, order: usize) -> Self {
        assert!(m >= 1 && (self.order() + 1) * m > order, "substitution would invent coefficients");
        let mut out = vec![S::zero(); order + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if k * m > order {
                break;
            }
            out[k * m] = c.clone();
        }
        Self::new(out)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Converts coefficients to float mode.
    pub fn to_float(&self) -> TruncSeries<num_complex::Complex64> {
        TruncSeries::new(self.coeffs.iter().map(Scalar::to_c64).collect())
    }

    /// Evaluates the truncated polynomial at a float point.
    pub fn eval_c64(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(num_complex::Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_c64())
    }
}

/// Free-function form of the four field operations.
pub fn arithmetic<S: Scalar>(a: &TruncSeries<S>, b: &TruncSeries<S>, op: ArithOp) -> Result<TruncSeries<S>> {
    a.arithmetic(b, op)
}

impl<S: Scalar> Add for &TruncSeries<S> {
    type Output = TruncSeries<S>;
    fn add(self, rhs: Self) -> TruncSeries<S> {
        TruncSeries::add(self, rhs)
    }
}

impl<S: Scalar> Sub for &TruncSeries<S> {
    type Output = TruncSeries<S>;
    fn sub(self, rhs: Self) -> TruncSeries<S> {
        TruncSeries::sub(self, rhs)
    }
}

impl<S: Scalar> Mul for &TruncSeries<S> {
    type Output = TruncSeries<S>;
    fn mul(self, rhs: Self) -> TruncSeries<S> {
        TruncSeries::mul(self, rhs)
    }
}

impl<S: Scalar> Neg for &TruncSeries<S> {
    type Output = TruncSeries<S>;
    fn neg(self) -> TruncSeries<S> {
        TruncSeries::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_rational, ExactComplex};
    use num_traits::One;

    type Q = ExactComplex;

    fn q(s: &str) -> Q {
        Q::from_rational(&parse_rational(s).unwrap())
    }

    fn ints(v: &[i64]) -> TruncSeries<Q> {
        TruncSeries::new(v.iter().map(|&x| Q::from_i64(x)).collect())
    }

    #[test]
    fn telescoping_product() {
        let a = ints(&[1, 1, 0, 0, 0]);
        let b = ints(&[1, -1, 0, 0, 0]);
        assert_eq!(a.mul(&b), ints(&[1, 0, -1, 0, 0]));
    }

    #[test]
    fn koebe_by_division() {
        let z = TruncSeries::<Q>::identity(8);
        let one_minus_z = ints(&[1, -1, 0, 0, 0, 0, 0, 0, 0]);
        let k = z.div(&one_minus_z.mul(&one_minus_z)).unwrap();
        assert_eq!(k, ints(&[0, 1, 2, 3, 4, 5, 6, 7, 8]));
    }

    #[test]
    fn division_by_zero_constant_term_fails() {
        let z = TruncSeries::<Q>::identity(4);
        assert!(matches!(z.div(&z), Err(Error::DivisionByZeroConstantTerm)));
    }

    #[test]
    fn mixed_orders_truncate_to_minimum() {
        let a = ints(&[1, 2, 3, 4, 5, 6]);
        let b = ints(&[1, 1, 1]);
        assert_eq!(a.add(&b).order(), 2);
        assert_eq!(a.mul(&b).order(), 2);
        assert!(a.mul(&b).coeff(3).is_err());
    }

    #[test]
    fn compose_with_identity_and_square() {
        let k = ints(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
        let id = TruncSeries::identity(10);
        assert_eq!(k.compose(&id).unwrap(), k);
        let z2 = TruncSeries::monomial(Q::one(), 2, 10);
        assert_eq!(k.compose(&z2).unwrap(), ints(&[0, 0, 1, 0, 2, 0, 3, 0, 4, 0, 5]));
        assert!(matches!(k.compose(&ints(&[1, 1])), Err(Error::NonzeroInnerConstant)));
    }

    #[test]
    fn binomial_powers() {
        let n = 10;
        let one_minus_z = TruncSeries::new((0..=n).map(|k| Q::from_i64([1, -1].get(k).copied().unwrap_or(0))).collect());
        let p = one_minus_z.pow_rational(-2, 1).unwrap();
        assert_eq!(p, TruncSeries::from_fn(n, |k| Q::from_i64(k as i64 + 1)));

        let one_plus_z = -&(&one_minus_z - &TruncSeries::constant(Q::from_i64(2), n));
        let root = one_plus_z.pow_rational(1, 2).unwrap();
        assert_eq!(root.mul(&root), one_plus_z);
        assert!(matches!(
            TruncSeries::<Q>::identity(3).pow_rational(1, 2),
            Err(Error::NonUnitConstantTerm)
        ));
    }

    #[test]
    fn root_transform_leading_terms() {
        // (1 - z^m)^{-2/m} = 1 + (2/m) z^m + ((m+2)/m^2) z^{2m} + ...
        for m in 1..=5usize {
            let n = 2 * m + 1;
            let base = &TruncSeries::<Q>::one(n) - &TruncSeries::monomial(Q::one(), m, n);
            let p = base.pow_rational(-2, m as u64).unwrap();
            let mi = m as i64;
            assert_eq!(p.coeff(m).unwrap(), &Q::from_ratio(2, mi));
            assert_eq!(p.coeff(2 * m).unwrap(), &Q::from_ratio(mi + 2, mi * mi));
        }
    }

    #[test]
    fn derivative_cases() {
        let z3 = TruncSeries::<Q>::monomial(Q::one(), 3, 5);
        assert_eq!(z3.differentiate(), TruncSeries::monomial(Q::from_i64(3), 2, 4));
        let k = ints(&[0, 1, 2, 3, 4]);
        assert_eq!(k.differentiate().coeff(0).unwrap(), &Q::one());
        assert!(TruncSeries::constant(q("7/3"), 4).differentiate().is_zero());
    }

    #[test]
    fn float_division_agrees_with_exact() {
        let a = TruncSeries::new(vec![q("1"), q("1/2"), q("-3"), q("2/7")]);
        let b = TruncSeries::new(vec![q("2"), q("1"), q("0"), q("-1/3")]);
        let exact = a.div(&b).unwrap().to_float();
        let float = a.to_float().div(&b.to_float()).unwrap();
        for (x, y) in exact.coeffs().iter().zip(float.coeffs()) {
            assert!((x - y).norm() < 1e-14, "{x} vs {y}");
        }
    }
}
