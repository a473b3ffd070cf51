//! Truncated power series over Gaussian rationals and over `Complex64`.
//!
//! ```bash
//! cargo run --example series_algebra
//! ```

use num_complex::Complex64;
use univalent::scalar::{ExactComplex, Scalar};
use univalent::series::TruncSeries;

type Q = ExactComplex;

fn show(label: &str, s: &TruncSeries<Q>) {
    let c: Vec<String> = s.coeffs().iter().map(Scalar::to_param).collect();
    println!("{label:<28} [{}]", c.join(", "));
}

fn main() -> univalent::Result<()> {
    let n = 8;
    let z = TruncSeries::<Q>::identity(n);
    let one = TruncSeries::<Q>::one(n);

    // z/(1 − z)^2, the Koebe function.
    let koebe = z.div(&one.sub(&z).mul(&one.sub(&z)))?;
    show("z/(1-z)^2", &koebe);

    // (1 − z)^{-1/2} squared is (1 − z)^{-1} again.
    let root = one.sub(&z).pow_rational(-1, 2)?;
    show("(1-z)^(-1/2)", &root);
    show("squared", &root.mul(&root));

    // Composition: Koebe ∘ (z/2).
    let half = z.scale(&Q::from_ratio(1, 2));
    show("koebe(z/2)", &koebe.compose(&half)?);
    show("koebe'", &koebe.differentiate());
    show("z^3 substituted for z", &root.substitute_power_into(3, n));

    // The same arithmetic in floating point, evaluated inside the disk.
    let f = koebe.to_float();
    let z0 = Complex64::new(0.1, 0.05);
    let exact = z0 / ((Complex64::new(1.0, 0.0) - z0) * (Complex64::new(1.0, 0.0) - z0));
    println!("koebe(0.1+0.05i): truncated {:.10}, closed form {:.10}", f.eval_c64(z0), exact);

    match one.sub(&one).reciprocal() {
        Err(e) => println!("1/0 series: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
