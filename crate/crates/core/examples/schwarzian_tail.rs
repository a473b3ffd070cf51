//! Schwarzian derivatives: the Taylor side, the Laurent tail of a
//! Σ-map, and a grid estimate of its Nehari-type norm.

use univalent::coeffs::s_to_sigma;
use univalent::families::{f_root_small, koebe};
use univalent::scalar::{Angle, ExactComplex, Scalar};
use univalent::schwarzian::{
    b_norm_refinement, schwarzian, schwarzian_sign_report, sigma_schwarzian_tail, BNormGrid, DEFAULT_TAIL_TERMS,
};

type Q = ExactComplex;

fn main() -> univalent::Result<()> {
    let k = koebe::<Q>(Angle::Zero, 14)?;
    let sk = schwarzian(&k.s()?.to_series())?;
    println!("S_koebe = {:?}", sk.coeffs().iter().map(Scalar::to_param).collect::<Vec<_>>());

    // The inversion z − 2 + 1/z has S_F = −6/z^4 · (1 − 1/z²)^{-2}.
    let inv = s_to_sigma(k.s()?);
    let tail = sigma_schwarzian_tail(&inv, DEFAULT_TAIL_TERMS)?;
    println!("tail of S_F: {:?}", tail.coeffs().iter().map(Scalar::to_param).collect::<Vec<_>>());
    let r = schwarzian_sign_report(&inv)?;
    println!("lim z^4 S_F = {}, S_f(0) = {}", r.limit.to_param(), r.s_f0.to_param());

    let refinement = b_norm_refinement(&tail, &BNormGrid::default(), 3)?;
    for e in &refinement.estimates {
        println!("  n_r = {:>3}, n_theta = {:>3}: {:.6}", e.grid.n_r, e.grid.n_theta, e.value);
    }
    println!("monotone {}, extrapolated {:.6}", refinement.monotone, refinement.richardson);

    let f = f_root_small(2, Q::from_ratio(1, 2), 14)?;
    let tail = sigma_schwarzian_tail(f.sigma()?, DEFAULT_TAIL_TERMS)?;
    println!("F_(2,1/2): first nonzero tail term at index {:?}", tail.first_nonzero());
    Ok(())
}
