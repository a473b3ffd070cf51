//! The extremal and test families, emitted as JSON sample files.
//!
//! ```bash
//! cargo run --example extremal_families -- /tmp/samples
//! ```

use std::path::PathBuf;

use num_complex::Complex64;
use univalent::families::{
    f_root_small, homotopy_s, koebe, koebe_root, small_dilatation, starlike_random, starlike_sample_exact,
    two_coeff_sigma,
};
use univalent::io::{sample_to_json, write_json};
use univalent::metric::dilatation_identities;
use univalent::scalar::{Angle, ExactComplex, Rational, Scalar};

type Q = ExactComplex;

fn main() -> univalent::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from);
    let mut out = Vec::new();

    out.push(sample_to_json(&koebe::<Q>(Angle::Pi, 10)?));
    let root = koebe_root::<Q>(3, Angle::Zero, 10)?;
    println!("koebe_root m=3: a_4 = {}, a_7 = {}", root.s()?.a(4)?.to_param(), root.s()?.a(7)?.to_param());
    out.push(sample_to_json(&root));

    // F_{m,t}: b_m = −2t/(m + 1).
    let f = f_root_small(3, Q::from_ratio(1, 2), 6)?;
    println!("F_(3,1/2): b_3 = {}", f.sigma()?.b(3)?.to_param());
    out.push(sample_to_json(&f));

    // f_{n−1,t} with k = 1/(n² + 1): a_n = 2kt/(n − 1).
    let k = Rational::new(1.into(), 26.into());
    let g = small_dilatation(5, &k, Q::from_i64(1), 9)?;
    println!("small dilatation n=5: a_5 = {}", g.s()?.a(5)?.to_param());
    out.push(sample_to_json(&g));

    let star = starlike_sample_exact(7, 10)?;
    println!("{}", star.label());
    out.push(sample_to_json(&star));
    let fl = starlike_random(7, 10)?;
    println!("{}", fl.label());
    out.push(sample_to_json(&homotopy_s(&fl, &Complex64::new(0.5, 0.0))?));

    // Dilatation of the homotopy of an affine-extension map.
    let two = two_coeff_sigma(Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.8), 4)?;
    let d = dilatation_identities(&two, Complex64::new(0.6, 0.0))?;
    println!("two_coeff_sigma dilatation {:.4} <= {:.4}: {}", d.dilatation, d.bound, d.holds);

    if let Some(dir) = dir {
        std::fs::create_dir_all(&dir)?;
        for (i, v) in out.iter().enumerate() {
            write_json(&dir.join(format!("sample_{i}.json")), v)?;
        }
        println!("wrote {} samples to {}", out.len(), dir.display());
    }
    Ok(())
}
