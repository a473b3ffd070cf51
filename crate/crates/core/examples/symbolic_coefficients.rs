//! `a_n` of `f ∈ S` as integer polynomials in the Laurent coefficients
//! `b_0, b_1, …` of `F(z) = 1/f(1/z) = z + b_0 + b_1/z + ⋯`.
//!
//! ```bash
//! cargo run --example symbolic_coefficients -- 9
//! ```

use univalent::scalar::{ExactComplex, Scalar};
use univalent::symbolic::{a_in_b, leading_structure, zalcman_in_b};

fn main() -> univalent::Result<()> {
    let n_max: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    for n in 2..=n_max {
        let a = a_in_b(n)?;
        println!("a_{n} = {a}   ({} terms)", a.len());
    }

    for n in 3..=n_max {
        let l = leading_structure(n)?;
        println!("top of a_{n}: {}", l.top);
    }

    // The b_0^{2n−2} parts of a_n² and a_{2n−1} cancel.
    let j = zalcman_in_b(3)?;
    println!("a_3^2 - a_5 = {j}");

    // Evaluate at the Koebe inversion z − 2 + 1/z: a_n = n.
    let b: Vec<ExactComplex> = [-2, 1, 0, 0, 0, 0]
        .iter()
        .map(|&v| ExactComplex::from_i64(v))
        .collect();
    for n in 2..=7 {
        println!("a_{n}(koebe) = {}", a_in_b(n)?.evaluate(&b)?.to_param());
    }
    Ok(())
}
