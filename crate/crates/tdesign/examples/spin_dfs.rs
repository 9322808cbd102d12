//! Spin decoherence-free subspace from design geometry: up-spins on a
//! design, down-spins on a rotated copy. Random polynomial fields of degree
//! at most the design order produce no relative phase between the two basis
//! states; one degree higher they generically do.
//!
//! Run with: `cargo run --example spin_dfs`

use tdesign::designs::{catalog_design, CATALOG_ORDERS};
use tdesign::geometry::random_rotation;
use tdesign::spindfs::dfs_check;

fn main() {
    for t in CATALOG_ORDERS {
        let design = catalog_design(t).expect("catalog order");
        let report = dfs_check(&design, random_rotation(7), t + 1, 100, 11);
        println!("t = {t} ({} spins per set):", design.len());
        for row in &report.rows {
            let status = if row.degree <= t { "protected" } else { "exposed" };
            println!(
                "  field degree {}: max relative phase rate {:>9.2e}  [{status}]",
                row.degree, row.max_phase_rate
            );
        }
    }
}
