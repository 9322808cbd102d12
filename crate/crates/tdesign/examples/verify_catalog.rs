//! Certify the closed-form designs and show where each one stops being
//! exact: the antipodal pair fails at degree 2, the tetrahedron at 3, the
//! octahedron at 4, the icosahedron at 6.
//!
//! Run with: `cargo run --example verify_catalog`

use tdesign::designs::{catalog_design, verify_design, CATALOG_ORDERS, VERIFY_TOL};

fn main() {
    for t in CATALOG_ORDERS {
        let design = catalog_design(t).expect("catalog order");
        let report = verify_design(&design.points, t + 1, VERIFY_TOL).expect("on-sphere points");
        println!(
            "t = {t}: N = {} points, certified_t = {}",
            design.len(),
            report.certified_t
        );
        for (i, r) in report.residuals.iter().enumerate() {
            let marker = if (i as u32) < t { "ok  " } else { "FAIL" };
            println!("  l = {:>2}  residual = {:>12.3e}  [{marker}]", i + 1, r);
        }
    }
}
