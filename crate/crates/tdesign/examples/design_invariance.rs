//! The core invariance property: a body built on a t-design has the same
//! energy in every orientation up to order t of the field expansion, and
//! orientation dependence first appears at order t + 1.
//!
//! Run with: `cargo run --example design_invariance`

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tdesign::constants::ELEMENTARY_CHARGE;
use tdesign::designs::{catalog_design, CATALOG_ORDERS};
use tdesign::fields::{potential_energy, PotentialMode, SourceModel};
use tdesign::geometry::{build_body, random_rotation_with, Kind, Vec3};

fn main() {
    // generic off-axis source, five body radii away
    let src = SourceModel::point(Kind::Charge, Vec3::new(3.0, -4.0, 5.0) * 1e-6, 1e-15);
    let mut rng = ChaCha8Rng::seed_from_u64(42);

    println!("relative spread of the truncated energy over 100 random orientations:");
    println!("  t    order t       order t+1");
    for t in CATALOG_ORDERS {
        let design = catalog_design(t).expect("catalog order");
        let body = build_body(&design.points, 1e-6, ELEMENTARY_CHARGE, Kind::Charge).unwrap();
        let mut spread = [0.0f64; 2];
        for (k, order) in [t, t + 1].into_iter().enumerate() {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for _ in 0..100 {
                let r = random_rotation_with(&mut rng);
                let e = potential_energy(&body.rotated(r), &src, PotentialMode::Truncated(order))
                    .unwrap();
                lo = lo.min(e);
                hi = hi.max(e);
            }
            spread[k] = (hi - lo).abs() / lo.abs().max(hi.abs());
        }
        println!("  {t}    {:>9.2e}    {:>9.2e}", spread[0], spread[1]);
    }
}
