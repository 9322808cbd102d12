//! Signal and noise dephasing rates versus design order, and their ratio.
//!
//! A 2 um body of elementary charges senses a single charge 10 um away
//! (signal) while 10^3 elementary charges perturb it from 200 um (noise).
//! The orientation pair is optimized for signal sensitivity per order. The
//! noise rate falls by ~(R/L) = 1/100 per order while the ratio grows by
//! ~(L/D) = 20 per order.
//!
//! Run with: `cargo run --release --example scaling_study`

use tdesign::config::ScenarioConfig;
use tdesign::fields::SourceModel;
use tdesign::optimize::OptimizerConfig;
use tdesign::phases::{scaling_study, PairSelection, StudyInputs, StudyRow};

fn main() {
    // the defaults are exactly this scenario
    let cfg = ScenarioConfig::default();
    let signal = SourceModel::point(cfg.signal.kind, cfg.signal.position, cfg.signal.strength);
    let noise = SourceModel::point(cfg.noise.kind, cfg.noise.position, cfg.noise.strength);
    let inputs = StudyInputs {
        design_for: |t| cfg.design_points(t),
        body_radius: cfg.body.radius_m,
        unit_weight: cfg.body.unit_weight,
        kind: cfg.body.kind,
        signal: &signal,
        noise: &noise,
        selection: PairSelection::SignalOptimized,
        optimizer: OptimizerConfig {
            restarts: 16,
            seed: 7,
            ..Default::default()
        },
    };
    let rows = scaling_study(&inputs, &[1, 2, 3, 5]);

    println!("  t    N    signal (Hz)    noise (Hz)     ratio");
    for row in &rows {
        match row {
            StudyRow::Row(r) => println!(
                "  {}   {:>2}    {:>10.4e}    {:>10.4e}    {:>10.4e}",
                r.t, r.n_points, r.delta_signal_hz, r.delta_noise_hz, r.ratio
            ),
            StudyRow::Missing { t, reason } => println!("  {t}: missing ({reason})"),
        }
    }

    // least-squares slope of ln(noise) against t
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter_map(|r| r.row())
        .map(|r| (r.t as f64, r.delta_noise_hz.ln()))
        .collect();
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let mr = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let slope = pts.iter().map(|p| (p.0 - mt) * (p.1 - mr)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mt) * (p.0 - mt)).sum::<f64>();
    println!(
        "\nnoise suppression per order: e^{slope:.3} = {:.4} (geometry R/L = 0.01)",
        slope.exp()
    );
}
