//! Acceptance suite: one test per exit criterion, each printing a PASS line
//! with its measured runtime. Run with `cargo test --test acceptance` (add
//! `-- --nocapture` to see the lines).

use std::time::Instant;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tdesign::config::ScenarioConfig;
use tdesign::constants::{ELEMENTARY_CHARGE, HBAR};
use tdesign::designs::{catalog_design, verify_design, CATALOG_ORDERS, VERIFY_TOL};
use tdesign::entangle::{
    concurrence, evolve, gravitational_scenario, GravityParams, PairEnergies,
};
use tdesign::fields::{
    exact_potential, expand, potential_energy, PotentialMode, SourceModel,
};
use tdesign::geometry::{build_body, random_rotation_with, Kind, Vec3};
use tdesign::optimize::OptimizerConfig;
use tdesign::phases::{scaling_study, PairSelection, StudyInputs};
use tdesign::solver::{default_point_count, solve_design, SolveOptions};
use tdesign::spindfs::dfs_check;

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum::<f64>()
}

fn charged_scenario_inputs<'a>(
    signal: &'a SourceModel,
    noise: &'a SourceModel,
) -> StudyInputs<'a, impl Fn(u32) -> tdesign::Result<Vec<Vec3>>> {
    StudyInputs {
        design_for: |t| Ok(catalog_design(t)?.points),
        body_radius: 2e-6,
        unit_weight: ELEMENTARY_CHARGE,
        kind: Kind::Charge,
        signal,
        noise,
        selection: PairSelection::SignalOptimized,
        optimizer: OptimizerConfig {
            restarts: 32,
            seed: 7,
            ..Default::default()
        },
    }
}

fn charged_sources() -> (SourceModel, SourceModel) {
    let cfg = ScenarioConfig::default();
    (
        SourceModel::point(cfg.signal.kind, cfg.signal.position, cfg.signal.strength),
        SourceModel::point(cfg.noise.kind, cfg.noise.position, cfg.noise.strength),
    )
}

/// Criterion 1: catalog designs certify with residuals <= 1e-10 up to t and
/// fail generically (>= 1e-3) at t + 1.
#[test]
fn criterion_01_catalog_certification() {
    let start = Instant::now();
    for t in CATALOG_ORDERS {
        let design = catalog_design(t).unwrap();
        let report = verify_design(&design.points, t + 1, VERIFY_TOL).unwrap();
        assert_eq!(report.certified_t, t, "t={t}");
        for l in 1..=t {
            assert!(
                report.residual(l) <= 1e-10,
                "t={t} l={l}: {}",
                report.residual(l)
            );
        }
        assert!(
            report.residual(t + 1) >= 1e-3,
            "t={t} residual at t+1: {}",
            report.residual(t + 1)
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "runtime {elapsed:?}");
    println!("criterion 01 catalog certification: PASS ({elapsed:.2?})");
}

/// Criterion 2: the solver produces certified designs for every t in 1..=9
/// at the default sizing within 32 restarts, each verifying at 1e-9.
#[test]
fn criterion_02_solver_all_orders() {
    let start = Instant::now();
    let opts = SolveOptions::default();
    assert_eq!(opts.restarts, 32);
    for t in 1..=9u32 {
        let n = default_point_count(t);
        let design = solve_design(t, n, 1, &opts)
            .unwrap_or_else(|e| panic!("t={t} n={n}: {e}"));
        let recheck = verify_design(&design.points, t, 1e-9).unwrap();
        assert!(recheck.certified_t >= t, "t={t}: {}", recheck.certified_t);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 300.0, "runtime {elapsed:?}");
    println!("criterion 02 solver t=1..9: PASS ({elapsed:.2?})");
}

/// Criterion 3: truncated(t) energy is invariant over 100 Haar rotations
/// within 1e-9 relative; truncated(t+1) varies by at least 1e-6 relative
/// for a generic off-axis source.
#[test]
fn criterion_03_design_invariance() {
    let start = Instant::now();
    let src = SourceModel::point(Kind::Charge, Vec3::new(3.0, -4.0, 5.0) * 1e-6, 1e-15);
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for t in CATALOG_ORDERS {
        let design = catalog_design(t).unwrap();
        let body = build_body(&design.points, 1e-6, ELEMENTARY_CHARGE, Kind::Charge).unwrap();
        for (order, lo_bound, hi_bound) in [(t, 0.0, 1e-9), (t + 1, 1e-6, f64::INFINITY)] {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for _ in 0..100 {
                let r = random_rotation_with(&mut rng);
                let e =
                    potential_energy(&body.rotated(r), &src, PotentialMode::Truncated(order))
                        .unwrap();
                lo = lo.min(e);
                hi = hi.max(e);
            }
            let spread = (hi - lo).abs() / lo.abs().max(hi.abs());
            assert!(
                spread >= lo_bound && spread <= hi_bound,
                "t={t} order={order}: spread {spread:e}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "runtime {elapsed:?}");
    println!("criterion 03 rotation invariance up to order t: PASS ({elapsed:.2?})");
}

/// Criterion 4: ln|noise rate| falls linearly in t with slope ln(R/L)
/// = -ln 100 within 15% (R = 2 um body, L = 200 um source).
#[test]
fn criterion_04_noise_power_law() {
    let start = Instant::now();
    let (signal, noise) = charged_sources();
    let inputs = charged_scenario_inputs(&signal, &noise);
    let rows = scaling_study(&inputs, &[1, 2, 3, 5]);
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| {
            let row = r.row().expect("catalog orders cannot go missing");
            (row.t as f64, row.delta_noise_hz.ln())
        })
        .collect();
    let slope = least_squares_slope(&pts);
    let target = -(100.0f64).ln();
    let rel = (slope / target - 1.0).abs();
    assert!(rel <= 0.15, "slope {slope} vs {target} (rel {rel})");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "runtime {elapsed:?}");
    println!(
        "criterion 04 noise power law: PASS (slope {slope:.3} vs {target:.3}, {elapsed:.2?})"
    );
}

/// Criterion 5: the signal/noise ratio grows by a factor in [10, 40] per
/// unit t (nominal L/D = 20), measured as the fitted growth rate over the
/// scan.
#[test]
fn criterion_05_signal_noise_ratio_growth() {
    let start = Instant::now();
    let (signal, noise) = charged_sources();
    let inputs = charged_scenario_inputs(&signal, &noise);
    let rows = scaling_study(&inputs, &[1, 2, 3, 5]);
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| {
            let row = r.row().expect("catalog orders cannot go missing");
            (row.t as f64, row.ratio.ln())
        })
        .collect();
    let growth = least_squares_slope(&pts).exp();
    assert!(
        (10.0..=40.0).contains(&growth),
        "ratio growth per unit t: {growth}"
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "runtime {elapsed:?}");
    println!(
        "criterion 05 signal/noise ratio growth: PASS (x{growth:.1} per order, {elapsed:.2?})"
    );
}

/// Criterion 6: gravitational case study. Order 1: E_ent within [1.6, 160]
/// Hz and noise within [0.07, 700] Hz. Order 3: E_ent within [1e-4, 1e-2]
/// Hz and noise <= 1e-9 Hz. The order-1 to order-3 noise suppression
/// exceeds 1e9. Also: the entangling phase dominates the noise phase by
/// 10x at T = 1 s for order 3.
#[test]
fn criterion_06_gravitational_case_study() {
    let start = Instant::now();
    let params = GravityParams::default();
    assert_eq!(params.optimizer.restarts, 32);

    let r1 = gravitational_scenario(1, &params).unwrap();
    assert!(
        (1.6..=160.0).contains(&r1.e_ent_hz),
        "t=1 e_ent {} Hz",
        r1.e_ent_hz
    );
    assert!(
        (0.07..=700.0).contains(&r1.delta_noise_hz),
        "t=1 noise {} Hz",
        r1.delta_noise_hz
    );

    let r3 = gravitational_scenario(3, &params).unwrap();
    assert!(
        (1e-4..=1e-2).contains(&r3.e_ent_hz),
        "t=3 e_ent {} Hz",
        r3.e_ent_hz
    );
    assert!(r3.delta_noise_hz <= 1e-9, "t=3 noise {} Hz", r3.delta_noise_hz);

    let suppression = r1.delta_noise_hz / r3.delta_noise_hz;
    assert!(suppression > 1e9, "suppression {suppression:e}");

    // coherence figure of merit at T = 1 s
    assert!(
        r3.entangling_phase >= 10.0 * r3.noise_phase,
        "entangling phase {} vs noise phase {}",
        r3.entangling_phase,
        r3.noise_phase
    );

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "runtime {elapsed:?}");
    println!(
        "criterion 06 gravitational study: PASS (t=1: {:.2} Hz / {:.2} Hz; t=3: {:.2e} Hz / {:.2e} Hz, {elapsed:.2?})",
        r1.e_ent_hz, r1.delta_noise_hz, r3.e_ent_hz, r3.delta_noise_hz
    );
}

/// Criterion 7: multipole truncation residual decays with fitted exponent
/// n+1 within 5% at R/L = 0.1; order-24 truncation matches the exact
/// potential to 1e-12 relative at R/L = 0.01.
#[test]
fn criterion_07_multipole_oracle() {
    let start = Instant::now();
    let src = SourceModel::point(Kind::Charge, Vec3::new(0.0, 0.0, 1.0), 1.0);
    let exp = expand(&src, 24).unwrap();
    let x = Vec3::new(0.0, 0.0, 0.1);
    let exact = exact_potential(&src, x).unwrap();
    let pts: Vec<(f64, f64)> = (0..=8u32)
        .map(|n| {
            let resid = (exact - exp.eval_truncated(x, n).unwrap()).abs();
            (n as f64, resid.ln())
        })
        .collect();
    let slope = least_squares_slope(&pts);
    // residual ~ (R/L)^{n+1}: per-degree decay factor ln(R/L)
    let rel = (slope / (0.1f64).ln() - 1.0).abs();
    assert!(rel <= 0.05, "decay slope {slope} (rel err {rel})");

    let x_far = Vec3::new(0.006, 0.003, -0.007);
    let src2 = SourceModel::point(Kind::Charge, Vec3::new(0.3, -0.2, 0.93), 1.0);
    let exp2 = expand(&src2, 24).unwrap();
    let exact2 = exact_potential(&src2, x_far).unwrap();
    let trunc2 = exp2.eval_truncated(x_far, 24).unwrap();
    assert!(
        ((trunc2 - exact2) / exact2).abs() <= 1e-12,
        "order-24 relative error {:e}",
        ((trunc2 - exact2) / exact2).abs()
    );

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "runtime {elapsed:?}");
    println!("criterion 07 multipole oracle: PASS ({elapsed:.2?})");
}

/// Criterion 8: concurrence of the evolved four-branch state equals
/// |sin(E_ent T / 2 hbar)| within 1e-12 on a 1000-point grid, vanishing at
/// E_ent T / hbar in 2 pi Z.
#[test]
fn criterion_08_entanglement_algebra() {
    let start = Instant::now();
    // hbar-scale branch energies keep every phase O(10) over the grid
    let pe = PairEnergies {
        e11: 2.0 * HBAR,
        e12: 0.75 * HBAR,
        e21: -0.5 * HBAR,
        e22: 1.25 * HBAR,
    };
    let e_ent = (pe.e11 - pe.e12) + (pe.e22 - pe.e21); // 3 hbar
    let omega = e_ent / HBAR; // rad/s
    for k in 0..1000 {
        let t = k as f64 * 8.0 * std::f64::consts::PI / (omega * 999.0);
        let state = evolve(&pe, [0.0; 4], t);
        let closed = (omega * t / 2.0).sin().abs();
        assert!(
            (concurrence(&state) - closed).abs() <= 1e-12,
            "k={k}: {} vs {closed}",
            concurrence(&state)
        );
    }
    // exact zeros of the entanglement condition
    let state0 = evolve(&pe, [0.0; 4], 0.0);
    assert_eq!(concurrence(&state0), 0.0);
    for n in 1..=8 {
        let t = 2.0 * std::f64::consts::PI * n as f64 / omega;
        let state = evolve(&pe, [0.0; 4], t);
        assert!(
            concurrence(&state) <= 1e-12,
            "n={n}: {}",
            concurrence(&state)
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "runtime {elapsed:?}");
    println!("criterion 08 entanglement algebra: PASS ({elapsed:.2?})");
}

/// Criterion 9: spin DFS residuals: <= 1e-10 relative for field degrees up
/// to t, >= 1e-3 at degree t + 1, 100 random fields per degree.
#[test]
fn criterion_09_spin_dfs() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for t in CATALOG_ORDERS {
        let design = catalog_design(t).unwrap();
        let rotation = random_rotation_with(&mut rng);
        let report = dfs_check(&design, rotation, t + 1, 100, 13);
        for row in &report.rows {
            if row.degree <= t {
                assert!(
                    row.max_phase_rate <= 1e-10,
                    "t={t} degree={}: {:e}",
                    row.degree,
                    row.max_phase_rate
                );
            } else {
                assert!(
                    row.max_phase_rate >= 1e-3,
                    "t={t} degree={}: {:e}",
                    row.degree,
                    row.max_phase_rate
                );
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "runtime {elapsed:?}");
    println!("criterion 09 spin decoherence-free subspace: PASS ({elapsed:.2?})");
}

/// Criterion 10: every CLI subcommand run twice with identical inputs
/// produces byte-identical CSV output.
#[test]
fn criterion_10_cli_determinism() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).display().to_string();

    let config_path = path("scenario.cfg");
    std::fs::write(
        &config_path,
        "design.t_list = 1,2\noptimizer.restarts = 4\noptimizer.seed = 11\n",
    )
    .unwrap();
    let solved_points = path("solved.txt");

    let runs: Vec<(Vec<String>, String)> = vec![
        (
            vec![
                "verify".into(),
                "--t".into(),
                "2".into(),
                "--out-csv".into(),
                path("verify.csv"),
            ],
            path("verify.csv"),
        ),
        (
            vec![
                "solve".into(),
                "--t".into(),
                "2".into(),
                "--n".into(),
                "4".into(),
                "--seed".into(),
                "1".into(),
                "--out".into(),
                solved_points.clone(),
                "--out-csv".into(),
                path("solve.csv"),
            ],
            path("solve.csv"),
        ),
        (
            vec![
                "scaling".into(),
                "--config".into(),
                config_path.clone(),
                "--out-csv".into(),
                path("scaling.csv"),
            ],
            path("scaling.csv"),
        ),
        (
            vec![
                "entangle".into(),
                "--config".into(),
                config_path.clone(),
                "--out-csv".into(),
                path("entangle.csv"),
            ],
            path("entangle.csv"),
        ),
        (
            vec![
                "gravity".into(),
                "--t".into(),
                "1".into(),
                "--restarts".into(),
                "4".into(),
                "--out-csv".into(),
                path("gravity.csv"),
            ],
            path("gravity.csv"),
        ),
        (
            vec![
                "spin".into(),
                "--t".into(),
                "2".into(),
                "--trials".into(),
                "20".into(),
                "--out-csv".into(),
                path("spin.csv"),
            ],
            path("spin.csv"),
        ),
    ];

    for (args, csv_path) in runs {
        let full: Vec<String> = std::iter::once("tdesign".to_string())
            .chain(args.iter().cloned())
            .collect();
        let code = tdesign::cli::run(full.clone());
        assert_eq!(code, 0, "first run of {:?}", args[0]);
        let first = std::fs::read(&csv_path).unwrap();
        let code = tdesign::cli::run(full);
        assert_eq!(code, 0, "second run of {:?}", args[0]);
        let second = std::fs::read(&csv_path).unwrap();
        assert_eq!(first, second, "{:?} output differs between runs", args[0]);
        // CSV sanity: header row, comma-separated, LF endings
        let text = String::from_utf8(first).unwrap();
        assert!(text.lines().count() >= 2);
        assert!(text.lines().next().unwrap().contains(','));
        assert!(!text.contains('\r'));
    }

    let elapsed = start.elapsed();
    println!("criterion 10 CLI determinism: PASS ({elapsed:.2?})");
}
