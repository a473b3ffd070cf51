//! Fixed-answer checks. Every check is exact unless it involves a sampled
//! metric; a mismatch becomes a violation, a disagreement with a reference
//! display that the library itself re-derives becomes a warning.

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::config::ScanConfig;
use super::report::{Check, ScanReport, Status, Violation, Warning};
use crate::coeffs::{s_to_sigma, sigma_to_s};
use crate::error::Result;
use crate::families::{catalog, f_root_small, koebe, koebe_root, odd_koebe, sigma_catalog, small_dilatation};
use crate::functionals::{adjacent_gap, power_gap, zalcman, FunctionalSpec};
use crate::metric::{
    golusin_bound, golusin_extremal, hyperbolic, lambda_m, lemma33_check, lower_bound_metric, pullback_envelope,
    radial_curvature_check, GridSpec, LemmaTolerances, StencilOrder,
};
use crate::scalar::{Angle, ExactComplex, Rational, Scalar};
use crate::schwarzian::{schwarzian, schwarzian_sign_report, sigma_schwarzian_tail};
use crate::series::TruncSeries;
use crate::symbolic::{a_in_b, leading_structure, MultiPoly};
use crate::families::two_coeff_sigma;

type Q = ExactComplex;

/// Reference expressions of `a_2 … a_7` in the Σ-coefficients.
pub const REFERENCE_A_IN_B: [(usize, &str); 6] = [
    (2, "-b0"),
    (3, "-b1 + b0^2"),
    (4, "-b2 + 2 b1 b0 - b0^3"),
    (5, "-b3 + 2 b2 b0 + b1^2 - 3 b1 b0^2 + b0^4"),
    (6, "-b4 + 2 b3 b0 + 2 b2 b1 - 3 b2 b0^2 - 3 b1^2 b0 + 4 b1 b0^3 - b0^5"),
    (
        7,
        "b0^6 - 5 b1 b0^4 - b1^3 + 4 b2 b0^3 + b2^2 + 6 b1^2 b0^2 - 3 b3 b0^2 + 2 b1 b3 - 6 b1 b2 b0 + 2 b4 b0 - b5",
    ),
];

/// Reference coefficient of `z^{2m+1}` in `z(1 − e^{iθ} z^m)^{−2/m}`
/// (times `e^{−2iθ}`), as displayed: `(m − 2)/m²`.
pub fn reference_root_coefficient(m: usize) -> Rational {
    Rational::new((m as i64 - 2).into(), ((m * m) as i64).into())
}

#[derive(Default)]
struct Suite {
    checks: Vec<Check>,
    warnings: Vec<Warning>,
}

impl Suite {
    fn check(&mut self, name: impl Into<String>, ok: bool, expected: impl ToString, found: impl ToString) {
        self.checks.push(Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: expected.to_string(),
            found: found.to_string(),
        });
    }

    fn result<T>(&mut self, name: impl Into<String>, r: Result<T>, f: impl FnOnce(&mut Self, T)) {
        match r {
            Ok(v) => f(self, v),
            Err(e) => self.check(name, false, "no error", e),
        }
    }

    fn warn(&mut self, id: &str, message: String, derived: String, printed: String) {
        self.checks.push(Check {
            name: id.to_string(),
            status: Status::Warn,
            expected: printed.clone(),
            found: derived.clone(),
        });
        self.warnings.push(Warning { id: id.to_string(), message, derived, printed });
    }
}

fn q(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

fn symbolic(s: &mut Suite) {
    for (n, text) in REFERENCE_A_IN_B {
        let name = format!("a_{n} in b");
        let r = a_in_b(n).and_then(|a| Ok((MultiPoly::parse(text, a.nvars())?, a)));
        s.result(name.clone(), r, |s, (want, got)| s.check(name, want == got, want, got));
    }
    for n in 3..=12 {
        let name = format!("leading structure of a_{n}");
        s.result(name.clone(), leading_structure(n), |s, l| s.check(name, true, "top terms", l.top));
    }
}

fn round_trips(s: &mut Suite) -> Result<()> {
    let mut bad = Vec::new();
    for f in catalog::<Q>(13)? {
        let a = f.s()?;
        if sigma_to_s(&s_to_sigma(a)) != *a {
            bad.push(f.label());
        }
    }
    for f in sigma_catalog::<Q>(12)? {
        let b = f.sigma()?;
        if s_to_sigma(&sigma_to_s(b)) != *b {
            bad.push(f.label());
        }
    }
    s.check("S/Sigma round trips", bad.is_empty(), "identity on both catalogs", format!("{bad:?}"));
    Ok(())
}

fn families(s: &mut Suite) -> Result<()> {
    let i = Q::new(Rational::zero(), Rational::one());
    for m in 1..=4usize {
        for (t, on_circle) in [
            (Q::one(), true),
            (-Q::one(), true),
            (i.clone(), true),
            (Q::from_ratio(1, 2), false),
            (Q::from_parts(&q(1, 3), &q(-1, 4)), false),
        ] {
            let f = f_root_small(m, t.clone(), m + 2)?;
            let bm = f.sigma()?.b(m)?;
            let want = t.clone() * Q::from_ratio(-2, m as i64 + 1);
            s.check(format!("b_{m}(F_{{{m},{}}})", t.to_param()), bm == want, want.to_param(), bm.to_param());
            let bound = q(2, m as i64 + 1);
            let ord = bm.cmp_modulus(&bound, 0.0);
            let ok = if on_circle { ord.is_eq() } else { ord.is_lt() };
            s.check(
                format!("|b_{m}| vs 2/{} at t = {}", m + 1, t.to_param()),
                ok,
                if on_circle { "equality" } else { "strict" },
                format!("{ord:?}"),
            );
        }
    }
    for n in 3..=6usize {
        let k = q(1, (n * n + 1) as i64);
        for t in [Q::one(), -Q::one()] {
            let f = small_dilatation(n, &k, t.clone(), n)?;
            let an = f.s()?.a(n)?;
            let want = t.clone() * Q::from_rational(&k) * Q::from_ratio(2, n as i64 - 1);
            s.check(format!("a_{n}(f_{{{},t}}), t = {}", n - 1, t.to_param()), an == want, want.to_param(), an.to_param());
        }
    }
    for m in 2..=6usize {
        for theta in [Angle::Zero, Angle::Pi] {
            let f = koebe_root::<Q>(m, theta, 2 * m + 1)?;
            let u = Q::unimodular(theta)?;
            let got = f.s()?.a(m + 1)?;
            let want = u.clone() * Q::from_ratio(2, m as i64);
            s.check(format!("a_{}(koebe_root m = {m}, θ = {theta})", m + 1), got == want, want.to_param(), got.to_param());
            let got = f.s()?.a(2 * m + 1)?;
            let want = u.clone() * u * Q::from_ratio(m as i64 + 2, (m * m) as i64);
            s.check(format!("a_{}(koebe_root m = {m}, θ = {theta})", 2 * m + 1), got == want, want.to_param(), got.to_param());
        }
    }
    let m = 3;
    let derived = koebe_root::<Q>(m, Angle::Zero, 2 * m + 1)?.s()?.a(2 * m + 1)?;
    let printed = reference_root_coefficient(m);
    if derived != Q::from_rational(&printed) {
        s.warn(
            "root-transform-coefficient",
            format!("z^{} coefficient of the m = {m} root transform of the Koebe function", 2 * m + 1),
            derived.to_param(),
            printed.to_string(),
        );
    }
    Ok(())
}

fn koebe_values(s: &mut Suite) -> Result<()> {
    for theta in [Angle::Zero, Angle::Pi] {
        let k = koebe::<Q>(theta, 15)?;
        let a = k.s()?;
        for n in 2..=8 {
            let v = zalcman(a, n)?;
            let want = Q::from_i64(((n - 1) * (n - 1)) as i64);
            let ok = v.cmp_modulus(&q(((n - 1) * (n - 1)) as i64, 1), 0.0).is_eq();
            s.check(format!("|J_{n}(koebe θ = {theta})| = (n-1)^2"), ok, want.to_param(), v.to_param());
        }
        for n in 3..=6usize {
            for p in 1..=3u32 {
                if n > 3 {
                    let spec = FunctionalSpec::PowerGap { n, p };
                    let v = power_gap(a, n, p)?;
                    let ok = v.cmp_modulus(&spec.bound(), 0.0).is_eq();
                    s.check(format!("power gap slack 0 at koebe θ = {theta}, n = {n}, p = {p}"), ok, spec.bound(), v.to_param());
                }
                let spec = FunctionalSpec::AdjacentGap { n, p };
                let v = adjacent_gap(a, n, p)?;
                let ok = v.cmp_modulus(&spec.bound(), 0.0).is_eq();
                s.check(format!("adjacent gap slack 0 at koebe θ = {theta}, n = {n}, p = {p}"), ok, spec.bound(), v.to_param());
            }
        }
        let o = odd_koebe::<Q>(theta, 3)?;
        let v = zalcman(o.s()?, 2)?;
        s.check(format!("|J_2(odd koebe θ = {theta})| = 1"), v.cmp_modulus(&Rational::one(), 0.0).is_eq(), "1", v.to_param());
    }
    Ok(())
}

fn schwarzian_checks(s: &mut Suite) -> Result<()> {
    // Möbius maps z/(1 + cz) and z/(1 − c̄z)·(1 + …) have zero Schwarzian.
    for c in [Q::from_i64(3), Q::from_parts(&q(1, 2), &q(-2, 3))] {
        let order = 11;
        let den = TruncSeries::one(order).add(&TruncSeries::monomial(c.clone(), 1, order));
        let f = TruncSeries::identity(order).div(&den)?;
        let sf = schwarzian(&f)?;
        s.check(format!("S(z/(1 + {} z)) = 0 to order 8", c.to_param()), sf.is_zero() && sf.order() == 8, "0", format!("{:?}", sf.coeffs().iter().map(Scalar::display).collect::<Vec<_>>()));
    }
    let mut bad = Vec::new();
    for f in sigma_catalog::<Q>(12)? {
        let b = f.sigma()?;
        let lead = sigma_schwarzian_tail(b, 1)?.leading();
        if lead != Q::from_i64(-6) * b.b(1)? {
            bad.push(f.label());
        }
    }
    s.check("Schwarzian tail leading coefficient = -6 b_1", bad.is_empty(), "all Σ catalog samples", format!("{bad:?}"));

    let f = two_coeff_sigma(Q::zero(), Q::from_ratio(1, 2), 4)?;
    let r = schwarzian_sign_report(f.sigma()?)?;
    s.check(
        "lim z^4 S_F = S_f(0) on z + 1/(2z)",
        r.same_sign,
        r.s_f0.to_param(),
        r.limit.to_param(),
    );
    if r.same_sign && !r.opposite_sign {
        s.warn(
            "schwarzian-limit-sign",
            "sign relating lim z^4 S_F(z) to S_f(0) for F(z) = 1/f(1/z)".into(),
            "lim z^4 S_F(z) = +S_f(0)".into(),
            "lim z^4 S_F(z) = -S_f(0)".into(),
        );
    }
    Ok(())
}

fn curvature_checks(s: &mut Suite) -> Result<()> {
    let grid = GridSpec::new(0.05, 0.9, 1e-3)?.padded(StencilOrder::Sixth.half_width())?.points();
    let mut models = vec![("hyperbolic".to_string(), hyperbolic(&grid)?)];
    for m in [1, 2, 3, 5] {
        models.push((format!("lambda_{m}"), lambda_m(m, &grid)?));
    }
    for (name, metric) in models {
        let rep = radial_curvature_check(&metric, StencilOrder::Sixth)?;
        s.check(format!("curvature slack of {name}"), rep.max_abs_slack <= 1e-6, "|slack| <= 1e-6", format!("{:.3e}", rep.max_abs_slack));
    }
    let tol = LemmaTolerances::default();
    for m in 1..=3u32 {
        for c in [0.5, 0.8, 1.0] {
            for (kind, metric) in [
                ("lower bound", lower_bound_metric(m, c, &grid)?),
                ("pullback envelope", pullback_envelope(m, c, &grid)?),
            ] {
                let name = format!("lemma check on {kind} metric m = {m}, c = {c}");
                s.result(name.clone(), lemma33_check(&metric, m, c, &tol), |s, rep| {
                    s.check(name, rep.min_margin >= -1e-9, "margin >= -1e-9", format!("{:.3e}", rep.min_margin))
                });
            }
        }
    }
    for m in 1..=3u32 {
        for c in [0.0, 0.3, 0.9] {
            let g = golusin_extremal(m, Complex64::new(c, 0.0));
            let mut worst = 0.0f64;
            for r in [0.1, 0.4, 0.75, 0.95] {
                let b = golusin_bound(m, c, r)?;
                worst = worst.max(((g(Complex64::new(r, 0.0)).0.norm()) - b).abs());
            }
            s.check(format!("Golusin extremal attains the bound, m = {m}, c = {c}"), worst <= 1e-14, "0", format!("{worst:.3e}"));
        }
    }
    Ok(())
}

/// Runs every fixed-answer check. Exit code 1 iff some check fails.
pub fn run_golden_suite(cfg: &ScanConfig) -> Result<ScanReport> {
    let mut s = Suite::default();
    symbolic(&mut s);
    let sections: [(&str, fn(&mut Suite) -> Result<()>); 5] = [
        ("round trips", round_trips),
        ("family identities", families),
        ("extremal values", koebe_values),
        ("schwarzian", schwarzian_checks),
        ("curvature", curvature_checks),
    ];
    for (name, f) in sections {
        if let Err(e) = f(&mut s) {
            s.check(name, false, "no error", e);
        }
    }
    let mut report = ScanReport::new(cfg);
    for (i, c) in s.checks.iter().enumerate() {
        if c.status == Status::Fail {
            report.violations.push(Violation {
                id: i as u64,
                sample: c.name.clone(),
                check: "golden".into(),
                detail: format!("expected {}, found {}", c.expected, c.found),
            });
        }
    }
    report.sample_count = s.checks.len();
    report.checks = s.checks;
    report.warnings = s.warnings;
    report.finish();
    Ok(report)
}
