//! Solve for designs of orders 1 through 9 at the default point counts and
//! certify each result independently.
//!
//! Run with: `cargo run --release --example solve_design`

use std::time::Instant;

use tdesign::designs::verify_design;
use tdesign::solver::{default_point_count, solve_design, SolveOptions};

fn main() {
    let opts = SolveOptions::default();
    for t in 1..=9u32 {
        let n = default_point_count(t);
        let start = Instant::now();
        match solve_design(t, n, 1, &opts) {
            Ok(design) => {
                let recheck = verify_design(&design.points, t, opts.verify_tol).unwrap();
                println!(
                    "t = {t}: n = {n:>2}, residual = {:>9.2e}, recheck certified_t = {}, {:>8.1?}",
                    design.residual,
                    recheck.certified_t,
                    start.elapsed()
                );
            }
            Err(e) => println!("t = {t}: n = {n:>2}, {e}"),
        }
    }
}
