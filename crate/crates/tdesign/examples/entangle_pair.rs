//! Two charged design bodies 10 um apart: entangling energy versus the
//! dephasing caused by a distant perturber, across design orders.
//!
//! The perturbing rate collapses orders of magnitude faster than the
//! entangling rate, so higher-order bodies entangle while staying coherent.
//! Also evolves the four-branch state at t = 2 and prints its concurrence
//! over time.
//!
//! Run with: `cargo run --release --example entangle_pair`

use tdesign::config::ScenarioConfig;
use tdesign::constants::HBAR;
use tdesign::entangle::{
    concurrence, entangling_energy, evolve, pair_energies, two_body_study, TwoBodyInputs,
};
use tdesign::fields::SourceModel;
use tdesign::geometry::build_body;
use tdesign::optimize::OptimizerConfig;
use tdesign::phases::StudyRow;

fn main() {
    let cfg = ScenarioConfig::default();
    let noise = SourceModel::point(cfg.noise.kind, cfg.noise.position, cfg.noise.strength);
    let inputs = TwoBodyInputs {
        design_for: |t| cfg.design_points(t),
        body_radius: cfg.body.radius_m,
        unit_weight: cfg.body.unit_weight,
        kind: cfg.body.kind,
        separation: cfg.separation,
        noise: &noise,
        optimizer: OptimizerConfig {
            restarts: 8,
            seed: 3,
            ..Default::default()
        },
        time_s: 1.0,
    };
    println!("  t    E_ent (Hz)      noise (Hz)");
    let rows = two_body_study(&inputs, &[1, 2, 3, 5]);
    for row in &rows {
        if let StudyRow::Row(r) = row {
            println!(
                "  {}    {:>10.4e}    {:>10.4e}",
                r.t,
                r.e_ent_hz.unwrap(),
                r.delta_noise_hz
            );
        }
    }

    // evolve the t = 2 pair through one entangling period
    let points = cfg.design_points(2).unwrap();
    let body = build_body(&points, cfg.body.radius_m, cfg.body.unit_weight, cfg.body.kind).unwrap();
    let pair = tdesign::phases::default_pair(&body);
    let pe = pair_energies(&body, &body, &pair, &pair, cfg.separation).unwrap();
    let e_ent = entangling_energy(&pe);
    let period = 2.0 * std::f64::consts::PI * HBAR / e_ent.abs();
    println!("\nconcurrence over one entangling period ({period:.3e} s) at t = 2:");
    for k in 0..=8 {
        let t_evolve = period * k as f64 / 8.0;
        let state = evolve(&pe, [0.0; 4], t_evolve);
        println!("  T = {:>9.3e} s   C = {:.6}", t_evolve, concurrence(&state));
    }
}
