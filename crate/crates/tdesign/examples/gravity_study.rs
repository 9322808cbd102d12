//! Gravitationally mediated entanglement between two diamond composites.
//!
//! Each body is a 10 um central sphere with peripheral spheres on design
//! directions, total mass 1.83e-11 kg, 200 um apart. A 100 kg mass 20 m
//! away perturbs them. At order 1 the entangling rate is ~3 Hz against ~1 Hz
//! of noise dephasing; by order 3 the noise has collapsed by twelve orders
//! of magnitude while the entangling rate only dropped four.
//!
//! Run with: `cargo run --release --example gravity_study`

use tdesign::entangle::{gravitational_scenario, GravityParams};
use tdesign::optimize::OptimizerConfig;

fn main() {
    for t in 1..=3u32 {
        let params = GravityParams {
            optimizer: OptimizerConfig {
                restarts: 16,
                seed: 1,
                ..Default::default()
            },
            ..Default::default()
        };
        match gravitational_scenario(t, &params) {
            Ok(report) => print!("{}", report.summary()),
            Err(e) => println!("t = {t}: {e}"),
        }
    }
}
