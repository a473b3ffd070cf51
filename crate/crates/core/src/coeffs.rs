//! Coefficient vectors of the two classes and the triangular recurrence
//! linking them:
//!
//! ```text
//! b_0 + a_2 = 0,   b_n + Σ_{j=1}^{n} b_{n-j} a_{j+1} + a_{n+2} = 0.
//! ```

use crate::error::{Error, Result};
use crate::scalar::{Angle, Scalar};
use crate::series::TruncSeries;

/// `a_2, …, a_N` of `f(z) = z + a_2 z² + …`.
#[derive(Clone, Debug, PartialEq)]
pub struct SCoeffs<S> {
    a: Vec<S>,
}

impl<S: Scalar> SCoeffs<S> {
    /// Takes `a_2, …, a_N`; panics on an empty vector.
    pub fn new(a: Vec<S>) -> Self {
        assert!(!a.is_empty(), "SCoeffs needs at least a_2");
        Self { a }
    }

    /// The identity map truncated at `z^N`.
    pub fn identity(order: usize) -> Self {
        Self::new(vec![S::zero(); order.max(2) - 1])
    }

    /// Highest available index `N`.
    pub fn order(&self) -> usize {
        self.a.len() + 1
    }

    /// `a_n`, with `a_1 = 1`; a hard error past `N`.
    pub fn a(&self, n: usize) -> Result<S> {
        match n {
            0 => Ok(S::zero()),
            1 => Ok(S::one()),
            _ if n <= self.order() => Ok(self.a[n - 2].clone()),
            _ => Err(Error::InsufficientOrder { needed: n, available: self.order() }),
        }
    }

    /// `a_2, …, a_N`.
    pub fn tail(&self) -> &[S] {
        &self.a
    }

    pub fn into_tail(self) -> Vec<S> {
        self.a
    }

    /// `f` as a series `0 + z + a_2 z² + … + a_N z^N`.
    pub fn to_series(&self) -> TruncSeries<S> {
        let mut c = Vec::with_capacity(self.a.len() + 2);
        c.push(S::zero());
        c.push(S::one());
        c.extend(self.a.iter().cloned());
        TruncSeries::new(c)
    }

    /// Reads `a_2 … a_N` from a series with `f(0) = 0`, `f'(0) = 1`.
    pub fn from_series(f: &TruncSeries<S>) -> Result<Self> {
        if f.order() < 2 {
            return Err(Error::InsufficientOrder { needed: 2, available: f.order() });
        }
        if !f.coeffs()[0].is_zero() || !f.coeffs()[1].is_one() {
            return Err(Error::ParameterOutOfRange("series is not normalized (f(0)=0, f'(0)=1)".into()));
        }
        Ok(Self::new(f.coeffs()[2..].to_vec()))
    }

    /// `a_n ↦ e^{-i(n-1)θ} a_n`, the coefficients of `e^{iθ} f(e^{-iθ} z)`.
    pub fn rotate(&self, theta: Angle) -> Result<Self> {
        let u = S::unimodular(theta.negate())?;
        Ok(self.scale_by_powers(&u))
    }

    /// `a_n ↦ a_n t^{n-1}`.
    pub fn scale_by_powers(&self, t: &S) -> Self {
        let mut p = t.clone();
        let mut out = Vec::with_capacity(self.a.len());
        for x in &self.a {
            out.push(x.clone() * p.clone());
            p = p * t.clone();
        }
        Self::new(out)
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order < 2 || order > self.order() {
            return Err(Error::InsufficientOrder { needed: order, available: self.order() });
        }
        Ok(Self::new(self.a[..order - 1].to_vec()))
    }
}

/// `b_0, b_1, …, b_M` of `F(z) = z + b_0 + b_1 z^{-1} + …`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaCoeffs<S> {
    b: Vec<S>,
}

impl<S: Scalar> SigmaCoeffs<S> {
    /// Takes `b_0, …, b_M`; panics on an empty vector.
    pub fn new(b: Vec<S>) -> Self {
        assert!(!b.is_empty(), "SigmaCoeffs needs at least b_0");
        Self { b }
    }

    /// Highest available index `M`.
    pub fn order(&self) -> usize {
        self.b.len() - 1
    }

    pub fn b(&self, j: usize) -> Result<S> {
        self.b
            .get(j)
            .cloned()
            .ok_or(Error::InsufficientOrder { needed: j, available: self.order() })
    }

    pub fn coeffs(&self) -> &[S] {
        &self.b
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.b
    }

    /// `F(z)/z` as a power series in `w = 1/z`: `1 + b_0 w + b_1 w² + …`.
    pub fn to_w_series(&self) -> TruncSeries<S> {
        let mut c = Vec::with_capacity(self.b.len() + 1);
        c.push(S::one());
        c.extend(self.b.iter().cloned());
        TruncSeries::new(c)
    }

    /// Inverse of [`to_w_series`](Self::to_w_series); the constant term
    /// must be 1.
    pub fn from_w_series(g: &TruncSeries<S>) -> Result<Self> {
        if !g.coeffs()[0].is_one() {
            return Err(Error::NonUnitConstantTerm);
        }
        if g.order() < 1 {
            return Err(Error::InsufficientOrder { needed: 1, available: 0 });
        }
        Ok(Self::new(g.coeffs()[1..].to_vec()))
    }

    /// `F_t(z) = t F(z/t)`: `b_j ↦ b_j t^{j+1}`.
    pub fn scale_by_powers(&self, t: &S) -> Self {
        let mut p = t.clone();
        let mut out = Vec::with_capacity(self.b.len());
        for x in &self.b {
            out.push(x.clone() * p.clone());
            p = p * t.clone();
        }
        Self::new(out)
    }
}

/// `b_0 … b_{N-2}` from `a_2 … a_N`.
pub fn s_to_sigma<S: Scalar>(f: &SCoeffs<S>) -> SigmaCoeffs<S> {
    let a = f.tail();
    let m = a.len() - 1;
    let mut b: Vec<S> = Vec::with_capacity(m + 1);
    // a[i] = a_{i+2}; a_{j+1} for j >= 1 is a[j-1].
    for n in 0..=m {
        let mut acc = -a[n].clone();
        for j in 1..=n {
            acc = acc - b[n - j].clone() * a[j - 1].clone();
        }
        b.push(acc);
    }
    SigmaCoeffs::new(b)
}

/// `a_2 … a_{M+2}` from `b_0 … b_M`; exact inverse of [`s_to_sigma`].
pub fn sigma_to_s<S: Scalar>(f: &SigmaCoeffs<S>) -> SCoeffs<S> {
    let b = f.coeffs();
    let mut a: Vec<S> = Vec::with_capacity(b.len());
    for n in 0..b.len() {
        let mut acc = -b[n].clone();
        for j in 1..=n {
            acc = acc - b[n - j].clone() * a[j - 1].clone();
        }
        a.push(acc);
    }
    SCoeffs::new(a)
}

/// `b_1 = a_2² − a_3`. In terms of the Schwarzian, `S_f(0) = 6(a_3 − a_2²)
/// = −6 b_1`.
pub fn b1_bridge<S: Scalar>(a2: &S, a3: &S) -> S {
    a2.clone() * a2.clone() - a3.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactComplex;
    use num_complex::Complex64;

    fn ints(v: &[i64]) -> Vec<ExactComplex> {
        v.iter().map(|&x| ExactComplex::from_i64(x)).collect()
    }

    #[test]
    fn koebe_inverts_to_three_terms() {
        let f = SCoeffs::new(ints(&[2, 3, 4, 5, 6]));
        let b = s_to_sigma(&f);
        assert_eq!(b.coeffs(), ints(&[-2, 1, 0, 0, 0]).as_slice());
        assert_eq!(sigma_to_s(&b), f);
    }

    #[test]
    fn odd_koebe_and_identity() {
        let f = SCoeffs::new(ints(&[0, 1, 0, 1, 0]));
        let b = s_to_sigma(&f);
        assert_eq!(b.b(0).unwrap(), ExactComplex::from_i64(0));
        assert_eq!(b.b(1).unwrap(), ExactComplex::from_i64(-1));
        let id = SCoeffs::<ExactComplex>::identity(6);
        assert!(s_to_sigma(&id).coeffs().iter().all(|x| x == &ExactComplex::from_i64(0)));
    }

    #[test]
    fn out_of_range_index_is_an_error() {
        let f = SCoeffs::new(ints(&[2, 3]));
        assert!(f.a(3).is_ok());
        assert!(matches!(f.a(4), Err(Error::InsufficientOrder { .. })));
    }

    #[test]
    fn bridge_values() {
        let two = ExactComplex::from_i64(2);
        let three = ExactComplex::from_i64(3);
        assert_eq!(b1_bridge(&two, &three), ExactComplex::from_i64(1));
        let u = Complex64::from_polar(1.0, 0.7);
        let v = b1_bridge(&Complex64::new(0.0, 0.0), &u);
        assert!((v + u).norm() < 1e-15);
    }

    #[test]
    fn series_round_trip() {
        let f = SCoeffs::new(ints(&[2, 3, 4]));
        assert_eq!(SCoeffs::from_series(&f.to_series()).unwrap(), f);
        let b = s_to_sigma(&f);
        assert_eq!(SigmaCoeffs::from_w_series(&b.to_w_series()).unwrap(), b);
    }
}
