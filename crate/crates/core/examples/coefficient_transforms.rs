//! Passing between `f(z) = z + a_2 z^2 + ⋯` and `F(z) = 1/f(1/z)`.

use univalent::coeffs::{b1_bridge, s_to_sigma, sigma_to_s};
use univalent::families::{koebe, koebe_root, odd_koebe};
use univalent::scalar::{Angle, ExactComplex, Scalar};

type Q = ExactComplex;

fn list(v: &[Q]) -> String {
    v.iter().map(Scalar::to_param).collect::<Vec<_>>().join(", ")
}

fn main() -> univalent::Result<()> {
    for f in [
        koebe::<Q>(Angle::Zero, 8)?,
        koebe::<Q>(Angle::Pi, 8)?,
        odd_koebe::<Q>(Angle::Zero, 8)?,
        koebe_root::<Q>(2, Angle::Zero, 8)?,
    ] {
        let a = f.s()?;
        let b = s_to_sigma(a);
        println!("{}", f.label());
        println!("  a_2.. = [{}]", list(a.tail()));
        println!("  b_0.. = [{}]", list(b.coeffs()));
        assert_eq!(sigma_to_s(&b), *a);
        // The bridge b_1 = a_2² − a_3 is the n = 2 Zalcman functional.
        println!("  b_1 = a_2^2 - a_3 = {}", b1_bridge(&a.a(2)?, &a.a(3)?).to_param());
    }
    Ok(())
}
