//! Schwarzian derivatives of Taylor series and of Σ-class Laurent tails,
//! and grid estimates of the hyperbolic sup-norm of the latter.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::coeffs::{sigma_to_s, SigmaCoeffs};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::TruncSeries;

pub const DEFAULT_TAIL_TERMS: usize = 12;

/// `S_f = (f''/f')' − (f''/f')²/2` to order `N − 3`.
pub fn schwarzian<S: Scalar>(f: &TruncSeries<S>) -> Result<TruncSeries<S>> {
    if f.order() < 3 {
        return Err(Error::InsufficientOrder { needed: 3, available: f.order() });
    }
    let d1 = f.differentiate();
    if d1.coeffs()[0].is_zero() {
        return Err(Error::CriticalPointAtOrigin);
    }
    let d2 = d1.differentiate();
    let g = d2.div(&d1)?;
    let out = g.differentiate().sub(&g.mul(&g).scale(&S::from_ratio(1, 2)));
    Ok(out.truncate(f.order() - 3))
}

/// Laurent coefficients of `S_F(z) = Σ_k c_k z^{-(k+4)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchwarzianTail<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> SchwarzianTail<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        Self { coeffs }
    }

    /// `c_k`, the coefficient of `z^{-(k+4)}`.
    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// The `z^{-4}` coefficient, i.e. `lim z⁴ S_F(z)`.
    pub fn leading(&self) -> S {
        self.coeffs.first().cloned().unwrap_or_else(S::zero)
    }

    /// Index `k` of the first nonzero `c_k`.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let w = z.inv();
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * w + c.to_c64();
        }
        acc * w.powu(4)
    }

    pub fn to_float(&self) -> SchwarzianTail<Complex64> {
        SchwarzianTail::new(self.coeffs.iter().map(Scalar::to_c64).collect())
    }
}

/// First `terms` Laurent coefficients of `S_F` for `F = z + b_0 + b_1/z + …`.
///
/// In `w = 1/z`, `F''/F' = Q/P` with `P = 1 − Σ j b_j w^{j+1}` and
/// `Q = Σ j(j+1) b_j w^{j+2}`, and `S_F = −w² d(Q/P)/dw − (Q/P)²/2`.
/// Data `b_0 … b_M` determines `S_F` through `w^{M+3}`, i.e. `M` terms.
pub fn sigma_schwarzian_tail<S: Scalar>(f: &SigmaCoeffs<S>, terms: usize) -> Result<SchwarzianTail<S>> {
    let m = f.order();
    if terms > m {
        return Err(Error::InsufficientOrder { needed: terms, available: m });
    }
    let order = m + 3;
    let b = f.coeffs();
    let mut p = vec![S::zero(); order + 1];
    let mut q = vec![S::zero(); order + 1];
    p[0] = S::one();
    for (j, bj) in b.iter().enumerate().skip(1) {
        let jj = S::from_i64(j as i64);
        if j + 1 <= order {
            p[j + 1] = -(jj.clone() * bj.clone());
        }
        if j + 2 <= order {
            q[j + 2] = jj * S::from_i64(j as i64 + 1) * bj.clone();
        }
    }
    let r = TruncSeries::new(q).div(&TruncSeries::new(p))?;
    let dr = r.differentiate();
    let half = S::from_ratio(1, 2);
    let r2 = r.mul(&r);
    let mut s = vec![S::zero(); order + 1];
    for (k, c) in dr.coeffs().iter().enumerate() {
        if k + 2 <= order {
            s[k + 2] = s[k + 2].clone() - c.clone();
        }
    }
    for (k, c) in r2.coeffs().iter().enumerate() {
        s[k] = s[k].clone() - half.clone() * c.clone();
    }
    debug_assert!(s[..4].iter().all(|c| c.is_zero()));
    Ok(SchwarzianTail::new(s[4..4 + terms].to_vec()))
}

/// The two sides of the Schwarzian bridge between `f ∈ S` and its
/// inversion `F(z) = 1/f(1/z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SignReport<S> {
    /// `lim z⁴ S_F(z)` from the Laurent tail.
    pub limit: S,
    /// `S_f(0) = 6(a_3 − a_2²)` from the recovered Taylor coefficients.
    pub s_f0: S,
    /// `true` when `S_f(0) = +lim z⁴ S_F`.
    pub same_sign: bool,
    /// `true` when `S_f(0) = −lim z⁴ S_F`.
    pub opposite_sign: bool,
}

pub fn schwarzian_sign_report<S: Scalar>(f: &SigmaCoeffs<S>) -> Result<SignReport<S>> {
    let limit = sigma_schwarzian_tail(f, 1)?.leading();
    let a = sigma_to_s(f);
    let a2 = a.a(2)?;
    let a3 = a.a(3)?;
    let s_f0 = S::from_i64(6) * (a3 - a2.clone() * a2);
    Ok(SignReport {
        same_sign: s_f0.approx_eq(&limit, 1e-12),
        opposite_sign: s_f0.approx_eq(&-limit.clone(), 1e-12),
        limit,
        s_f0,
    })
}

/// Radial-angular sample of `1 < |z| ≤ r_max`.
///
/// Radii are `1 + δ ((r_max − 1)/δ)^{i/(n_r − 1)}`, angles `2πj/n_θ`;
/// [`refine`](Self::refine) keeps every old node, so refinement can only
/// raise the estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BNormGrid {
    pub r_max: f64,
    pub delta: f64,
    pub n_r: usize,
    pub n_theta: usize,
}

impl Default for BNormGrid {
    fn default() -> Self {
        Self { r_max: 8.0, delta: 1e-3, n_r: 33, n_theta: 32 }
    }
}

impl BNormGrid {
    pub fn validate(&self) -> Result<()> {
        if !(self.r_max > 1.0 && self.delta > 0.0 && self.delta < self.r_max - 1.0) || self.n_r < 2 || self.n_theta < 1 {
            return Err(Error::Config(format!("invalid B-norm grid {self:?}")));
        }
        Ok(())
    }

    pub fn refine(&self) -> Self {
        Self { n_r: 2 * self.n_r - 1, n_theta: 2 * self.n_theta, ..*self }
    }

    pub fn radii(&self) -> Vec<f64> {
        let ratio = (self.r_max - 1.0) / self.delta;
        (0..self.n_r)
            .map(|i| 1.0 + self.delta * ratio.powf(i as f64 / (self.n_r - 1) as f64))
            .collect()
    }

    pub fn angles(&self) -> Vec<f64> {
        (0..self.n_theta).map(|j| TAU * j as f64 / self.n_theta as f64).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BNormEstimate {
    /// `max (|z|² − 1)² |S_F(z)|` over the grid; a lower bound for the norm.
    pub value: f64,
    pub argmax: [f64; 2],
    pub grid: BNormGrid,
}

pub fn b_norm_estimate<S: Scalar>(tail: &SchwarzianTail<S>, grid: &BNormGrid) -> Result<BNormEstimate> {
    grid.validate()?;
    let tail = tail.to_float();
    let angles = grid.angles();
    let mut best = (0.0f64, Complex64::new(grid.r_max, 0.0));
    for r in grid.radii() {
        let weight = (r * r - 1.0) * (r * r - 1.0);
        for &a in &angles {
            let z = Complex64::from_polar(r, a);
            let v = weight * tail.eval(z).norm();
            if v > best.0 {
                best = (v, z);
            }
        }
    }
    Ok(BNormEstimate { value: best.0, argmax: [best.1.re, best.1.im], grid: *grid })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BNormRefinement {
    pub estimates: Vec<BNormEstimate>,
    /// `e_L + (e_L − e_{L−1})/3`, assuming second-order convergence in the
    /// grid spacing.
    pub richardson: f64,
    pub monotone: bool,
}

/// Estimates on `levels` successively refined grids.
pub fn b_norm_refinement<S: Scalar>(tail: &SchwarzianTail<S>, grid: &BNormGrid, levels: usize) -> Result<BNormRefinement> {
    let mut g = *grid;
    let mut estimates = Vec::with_capacity(levels);
    for _ in 0..levels.max(1) {
        estimates.push(b_norm_estimate(tail, &g)?);
        g = g.refine();
    }
    let monotone = estimates.windows(2).all(|w| w[1].value >= w[0].value);
    let last = estimates[estimates.len() - 1].value;
    let richardson = if estimates.len() >= 2 {
        last + (last - estimates[estimates.len() - 2].value) / 3.0
    } else {
        last
    };
    Ok(BNormRefinement { estimates, richardson, monotone })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::s_to_sigma;
    use crate::families::{f_root_small, homotopy_sigma, koebe, two_coeff_sigma};
    use crate::scalar::{Angle, ExactComplex};

    type Q = ExactComplex;

    #[test]
    fn mobius_and_koebe() {
        // z/(1 − z)
        let mob = TruncSeries::from_fn(10, |k| if k == 0 { Q::from_i64(0) } else { Q::from_i64(1) });
        assert!(schwarzian(&mob).unwrap().is_zero());
        let k = koebe::<Q>(Angle::Zero, 8).unwrap().s().unwrap().to_series();
        assert_eq!(schwarzian(&k).unwrap().coeffs()[0], Q::from_i64(-6));
        assert!(schwarzian(&TruncSeries::<Q>::identity(6)).unwrap().is_zero());
        let z2 = TruncSeries::monomial(Q::from_i64(1), 2, 6);
        assert!(matches!(schwarzian(&z2), Err(Error::CriticalPointAtOrigin)));
    }

    #[test]
    fn koebe_inversion_tail() {
        let b = s_to_sigma(koebe::<Q>(Angle::Zero, 16).unwrap().s().unwrap());
        let tail = sigma_schwarzian_tail(&b, 12).unwrap();
        // −6/(z² − 1)² = −6 Σ (k+1) z^{−4−2k}
        for (i, c) in tail.coeffs().iter().enumerate() {
            let expected = if i % 2 == 0 { -6 * (i as i64 / 2 + 1) } else { 0 };
            assert_eq!(c, &Q::from_i64(expected));
        }
        let report = schwarzian_sign_report(&b).unwrap();
        assert!(report.same_sign && !report.opposite_sign);
    }

    #[test]
    fn root_family_tail_starts_at_z5() {
        let f = f_root_small(2, Q::from_i64(1), 8).unwrap();
        let tail = sigma_schwarzian_tail(f.sigma().unwrap(), 6).unwrap();
        assert_eq!(tail.leading(), Q::from_i64(0));
        assert_eq!(tail.first_nonzero(), Some(1));
        let id = two_coeff_sigma(Q::from_i64(0), Q::from_i64(0), 6).unwrap();
        assert!(sigma_schwarzian_tail(id.sigma().unwrap(), 6).unwrap().is_zero());
    }

    #[test]
    fn b_norm_of_koebe_inversion() {
        let f = two_coeff_sigma(Q::from_i64(-2), Q::from_i64(1), 12).unwrap();
        let tail = sigma_schwarzian_tail(f.sigma().unwrap(), 12).unwrap();
        let r = b_norm_refinement(&tail, &BNormGrid::default(), 3).unwrap();
        assert!(r.monotone);
        assert!((r.estimates.last().unwrap().value - 6.0).abs() < 1e-3);
        let half = homotopy_sigma(&f, &Q::from_ratio(1, 2)).unwrap();
        let tail_half = sigma_schwarzian_tail(half.sigma().unwrap(), 12).unwrap();
        let e_half = b_norm_estimate(&tail_half, &BNormGrid::default()).unwrap();
        assert!(e_half.value <= r.estimates[0].value);
        let zero = SchwarzianTail::new(vec![Q::from_i64(0); 4]);
        assert_eq!(b_norm_estimate(&zero, &BNormGrid::default()).unwrap().value, 0.0);
    }
}
