//! Algebraic and analytic invariants over generated inputs.

use num_complex::Complex64;
use proptest::prelude::*;
use univalent::coeffs::{s_to_sigma, sigma_to_s, SCoeffs, SigmaCoeffs};
use univalent::families::{
    homotopy_s, koebe, starlike_random, starlike_sample_exact, two_coeff_sigma, UnivalentSample,
};
use univalent::functionals::{verify_homogeneity, FunctionalSpec};
use univalent::metric::{golusin_bound, golusin_extremal};
use univalent::scalar::{Angle, ExactComplex, Rational, Scalar};
use univalent::schwarzian::{b_norm_refinement, sigma_schwarzian_tail, BNormGrid};
use univalent::series::TruncSeries;
use univalent::symbolic::a_in_b;

type Q = ExactComplex;

fn rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn gauss() -> impl Strategy<Value = Q> {
    (rat(), rat()).prop_map(|(re, im)| Q::new(re, im))
}

fn series(order: usize) -> impl Strategy<Value = TruncSeries<Q>> {
    prop::collection::vec(gauss(), order + 1).prop_map(TruncSeries::new)
}

/// Series with constant term 1.
fn unit_series(order: usize) -> impl Strategy<Value = TruncSeries<Q>> {
    prop::collection::vec(gauss(), order).prop_map(|mut v| {
        v.insert(0, Q::from_i64(1));
        TruncSeries::new(v)
    })
}

fn unit_disk_t() -> impl Strategy<Value = Q> {
    (-3i64..=3, -3i64..=3, 5i64..=9).prop_map(|(a, b, d)| Q::from_parts(&Rational::new(a.into(), d.into()), &Rational::new(b.into(), d.into())))
}

fn c(x: &Complex64, y: &Complex64) -> bool {
    (x - y).norm() <= 1e-9 * (1.0 + y.norm())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn ring_laws(a in series(6), b in series(6), d in series(6)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&d), a.mul(&b.mul(&d)));
        prop_assert_eq!(a.mul(&b.add(&d)), a.mul(&b).add(&a.mul(&d)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn reciprocal_and_powers(f in unit_series(7), p in 1i64..=3, q in 1u64..=3) {
        let one = TruncSeries::<Q>::one(7);
        prop_assert_eq!(f.mul(&f.reciprocal().unwrap()), one);
        let root = f.pow_rational(p, q).unwrap();
        let mut back = TruncSeries::one(7);
        for _ in 0..q {
            back = back.mul(&root);
        }
        let mut direct = TruncSeries::one(7);
        for _ in 0..p {
            direct = direct.mul(&f);
        }
        prop_assert_eq!(back, direct);
    }

    #[test]
    fn composition(f in series(6), g in series(6), h in series(6)) {
        let z = TruncSeries::<Q>::identity(6);
        // Inner series need a zero constant term.
        let g = g.sub(&TruncSeries::constant(g.coeffs()[0].clone(), 6));
        let h = h.sub(&TruncSeries::constant(h.coeffs()[0].clone(), 6));
        prop_assert_eq!(f.compose(&z).unwrap(), f.clone());
        prop_assert_eq!(f.compose(&g).unwrap().compose(&h).unwrap(), f.compose(&g.compose(&h).unwrap()).unwrap());
    }

    #[test]
    fn float_agrees_with_exact(a in series(8), b in unit_series(8)) {
        let exact = a.mul(&b).div(&b.pow_rational(1, 2).unwrap()).unwrap().to_float();
        let fa = a.to_float();
        let fb = b.to_float();
        let float = fa.mul(&fb).div(&fb.pow_rational(1, 2).unwrap()).unwrap();
        for (x, y) in float.coeffs().iter().zip(exact.coeffs()) {
            prop_assert!((x - y).norm() <= 1e-7 * (1.0 + y.norm()), "{} vs {}", x, y);
        }
    }

    #[test]
    fn s_sigma_inverse(a in prop::collection::vec(gauss(), 2..12)) {
        let s = SCoeffs::new(a);
        prop_assert_eq!(sigma_to_s(&s_to_sigma(&s)), s.clone());
        let b = SigmaCoeffs::new(s.tail().to_vec());
        prop_assert_eq!(s_to_sigma(&sigma_to_s(&b)), b);
    }

    #[test]
    fn symbolic_matches_numeric(b in prop::collection::vec(gauss(), 8)) {
        let a = sigma_to_s(&SigmaCoeffs::new(b.clone()));
        for n in 2..=9 {
            prop_assert_eq!(a_in_b(n).unwrap().evaluate(&b).unwrap(), a.a(n).unwrap());
        }
    }

    #[test]
    fn homogeneity(seed in any::<u64>(), t in unit_disk_t(), n in 2usize..=6, p in 1u32..=3) {
        let f = starlike_sample_exact(seed, 11).unwrap();
        for spec in [
            FunctionalSpec::Zalcman { n },
            FunctionalSpec::AdjacentGap { n: n.max(3), p },
            FunctionalSpec::PowerGap { n: n.max(4), p },
        ] {
            prop_assert!(verify_homogeneity(&spec, &f, &t).unwrap(), "{}", spec);
        }
    }

    #[test]
    fn rotation_invariance(seed in any::<u64>(), theta in 0.0f64..6.28, n in 2usize..=6) {
        let f = starlike_random(seed, 11).unwrap();
        let a = f.s().unwrap();
        let r = a.rotate(Angle::Radians(theta)).unwrap();
        for spec in [FunctionalSpec::Zalcman { n }, FunctionalSpec::AdjacentGap { n: n.max(3), p: 2 }] {
            let x = spec.evaluate(a).unwrap().norm();
            let y = spec.evaluate(&r).unwrap().norm();
            prop_assert!((x - y).abs() <= 1e-9 * (1.0 + x));
        }
        let e = starlike_sample_exact(seed, 11).unwrap();
        let ea = e.s().unwrap();
        let er = ea.rotate(Angle::Pi).unwrap();
        let spec = FunctionalSpec::Zalcman { n };
        prop_assert_eq!(spec.evaluate(&er).unwrap(), spec.evaluate(ea).unwrap());
    }

    #[test]
    fn tail_leading_coefficient(b in prop::collection::vec(gauss(), 6)) {
        let f = SigmaCoeffs::new(b.clone());
        let tail = sigma_schwarzian_tail(&f, 5).unwrap();
        prop_assert_eq!(tail.leading(), Q::from_i64(-6) * b[1].clone());
    }

    #[test]
    fn b_norm_refinement_monotone(b0r in -1.0f64..1.0, b1r in -1.0f64..1.0, b1i in -1.0f64..1.0) {
        let b1 = Complex64::new(b1r, b1i);
        let b1 = if b1.norm() > 1.0 { b1 / b1.norm() } else { b1 };
        let f = two_coeff_sigma(Complex64::new(b0r, 0.0), b1, 12).unwrap();
        let tail = sigma_schwarzian_tail(f.sigma().unwrap(), 12).unwrap();
        let grid = BNormGrid { n_r: 9, n_theta: 8, ..BNormGrid::default() };
        let r = b_norm_refinement(&tail, &grid, 3).unwrap();
        prop_assert!(r.monotone);
    }

    #[test]
    fn golusin_growth(m in 1u32..=4, c in 0.0f64..=1.0, r in 0.0f64..0.99, phi in 0.0f64..6.28) {
        let bound = golusin_bound(m, c, r).unwrap();
        prop_assert!(bound <= r.powi(m as i32) * (1.0 + 1e-12));
        let g = golusin_extremal(m, Complex64::new(c, 0.0));
        prop_assert!(g(Complex64::from_polar(r, phi)).0.norm() <= bound * (1.0 + 1e-12) + 1e-15);
    }

    #[test]
    fn homotopy_composition(seed in any::<u64>(), s in unit_disk_t(), t in unit_disk_t()) {
        let f = starlike_sample_exact(seed, 9).unwrap();
        let once = homotopy_s(&f, &(s.clone() * t.clone())).unwrap();
        let twice = homotopy_s(&homotopy_s(&f, &s).unwrap(), &t).unwrap();
        prop_assert_eq!(once.s().unwrap(), twice.s().unwrap());
    }

    #[test]
    fn float_koebe_matches_exact(theta in prop::sample::select(vec![Angle::Zero, Angle::Pi])) {
        let e: UnivalentSample<Q> = koebe(theta, 10).unwrap();
        let f: UnivalentSample<Complex64> = koebe(theta, 10).unwrap();
        for (x, y) in e.s().unwrap().tail().iter().zip(f.s().unwrap().tail()) {
            prop_assert!(c(y, &x.to_c64()));
        }
    }

    #[test]
    fn samples_regenerate(seed in any::<u64>()) {
        let e = starlike_sample_exact(seed, 9).unwrap();
        prop_assert_eq!(e.regenerate().unwrap(), e);
        let f = starlike_random(seed, 9).unwrap();
        prop_assert_eq!(f.regenerate().unwrap(), f);
    }
}
