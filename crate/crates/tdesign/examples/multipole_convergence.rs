//! Truncation error of the multipole series: one power of R/L per degree.
//!
//! A single source sits at distance L; the potential is evaluated at radius
//! R = L/10. The residual after truncating at order n falls off as
//! (R/L)^{n+1}, i.e. one decade per degree here.
//!
//! Run with: `cargo run --example multipole_convergence`

use tdesign::fields::{exact_potential, expand, SourceModel};
use tdesign::geometry::{Kind, Vec3};

fn main() {
    let source_distance = 1.0;
    let src = SourceModel::point(
        Kind::Charge,
        Vec3::new(0.3, -0.2, 0.93).normalized() * source_distance,
        1e-12,
    );
    let exp = expand(&src, 12).expect("source away from origin");

    for ratio in [0.1, 0.01] {
        let x = Vec3::new(0.6, 0.64, 0.48).normalized() * (ratio * source_distance);
        let exact = exact_potential(&src, x).unwrap();
        println!("R/L = {ratio}: exact potential {exact:.12e} J/C");
        println!("  order   truncated            |residual|   residual/exact");
        for order in 0..=10u32 {
            let trunc = exp.eval_truncated(x, order).unwrap();
            let resid = (exact - trunc).abs();
            println!(
                "  {order:>5}   {trunc:>18.12e}   {resid:>9.2e}   {:>9.2e}",
                resid / exact.abs()
            );
        }
    }
}
