//! Curvature of radial metrics by finite differences, and the lower bound
//! for metrics of curvature at most −4 that behave like `c·m r^{m−1}`.
//!
//! ```bash
//! cargo run --example curvature_lemma -- 2 0.8
//! ```

use univalent::metric::{
    hyperbolic, lambda_m, lemma33_check, pullback_envelope, radial_curvature_check, GridSpec, LemmaTolerances,
    StencilOrder,
};
use univalent::Error;

fn main() -> univalent::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(2);
    let c: f64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(0.8);

    let grid = GridSpec::new(0.05, 0.9, 1e-3)?;
    let pts = grid.padded(StencilOrder::Sixth.half_width())?.points();

    for stencil in [StencilOrder::Second, StencilOrder::Fourth, StencilOrder::Sixth] {
        let rep = radial_curvature_check(&lambda_m(5, &pts)?, stencil)?;
        println!("lambda_5, {stencil:?} stencil: max |slack| {:.3e}", rep.max_abs_slack);
    }
    let rep = radial_curvature_check(&hyperbolic(&pts)?, StencilOrder::Sixth)?;
    println!("hyperbolic: max |slack| {:.3e}", rep.max_abs_slack);

    let metric = pullback_envelope(m, c, &pts)?;
    let r = lemma33_check(&metric, m, c, &LemmaTolerances::default())?;
    println!(
        "m = {m}, c = {c}: min margin {:.3e} at r = {:.3}, curvature violation {:.1e}, fit residual {:.1e}",
        r.min_margin, r.argmin, r.curvature_max_violation, r.hypothesis_fit_residual
    );

    // Shrinking the metric keeps the curvature bound but breaks the
    // asymptotics at the origin.
    match lemma33_check(&metric.scale(0.9)?, m, c, &LemmaTolerances::default()) {
        Err(Error::HypothesisNotMet { reason, .. }) => println!("scaled by 0.9: {reason}"),
        other => println!("scaled by 0.9: {other:?}"),
    }
    Ok(())
}
