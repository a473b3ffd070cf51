//! Coefficient functionals, their sharp bounds, and slack on a few maps.

use univalent::families::{homotopy_s, koebe, odd_koebe, starlike_sample_exact};
use univalent::functionals::{slack, verify_homogeneity, FunctionalSpec, Perturbation};
use univalent::scalar::{Angle, ExactComplex, Scalar};

type Q = ExactComplex;

fn main() -> univalent::Result<()> {
    let specs = [
        FunctionalSpec::Zalcman { n: 2 },
        FunctionalSpec::Zalcman { n: 4 },
        FunctionalSpec::PowerGap { n: 5, p: 2 },
        FunctionalSpec::AdjacentGap { n: 4, p: 3 },
        FunctionalSpec::Perturbed { n: 3, perturbation: Perturbation::parse(3, "1/10 a3^2")? },
    ];
    let samples = [
        koebe::<Q>(Angle::Zero, 9)?,
        odd_koebe::<Q>(Angle::Zero, 9)?,
        starlike_sample_exact(4, 9)?,
    ];
    for spec in &specs {
        println!("{spec}   bound {}", spec.bound());
        for f in &samples {
            let v = spec.evaluate(f.s()?)?;
            println!("  {:<48} |J| = {:<10.6} slack {:.6}", f.label(), v.modulus(), slack(&v, &spec.bound()));
        }
    }

    // J(f_t) = t^d J(f) for the homotopy f_t(z) = f(tz)/t.
    let t = Q::from_ratio(2, 3);
    let f = &samples[2];
    for spec in &specs {
        println!("{spec}: homogeneous of degree {} -> {}", spec.degree(), verify_homogeneity(spec, f, &t)?);
    }
    let ft = homotopy_s(f, &t)?;
    println!("{}", ft.label());
    Ok(())
}
