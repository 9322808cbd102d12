//! Command-line front end.
//!
//! Subcommands: `verify | solve | scaling | entangle | gravity | spin`.
//! Exit codes: 0 success, 1 check failed, 2 bad input, 3 numerical
//! non-convergence. All randomness flows from explicit seeds; running a
//! subcommand twice with the same inputs produces byte-identical files.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::config::ScenarioConfig;
use crate::designs;
use crate::entangle::{self, GravityParams};
use crate::error::{Error, Result};
use crate::geometry::random_rotation;
use crate::optimize::OptimizerConfig;
use crate::phases::{self, PairSelection, StudyInputs, StudyRow};
use crate::pointset;
use crate::solver::{self, SolveOptions};
use crate::spindfs;
use crate::svg::{log_line_chart, Series};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

/// Environment variable that redirects relative output paths.
pub const OUT_DIR_ENV: &str = "TDESIGN_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "tdesign",
    about = "Spherical t-designs, multipole fields, and rotational-coherence studies",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a point set (or a catalog design) as a spherical t-design.
    Verify(VerifyArgs),
    /// Solve for an n-point t-design and write it as a point file.
    Solve(SolveArgs),
    /// Signal/noise dephasing-rate scan across design orders.
    Scaling(StudyArgs),
    /// Two-body entangling-energy scan across design orders.
    Entangle(StudyArgs),
    /// Gravitational sphere-composite case study at one order.
    Gravity(GravityArgs),
    /// Spin decoherence-free-subspace residual scan.
    Spin(SpinArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Point file to verify; omit to verify the catalog design of order t.
    file: Option<PathBuf>,
    /// Requested certification order.
    #[arg(long)]
    t: u32,
    /// Residual tolerance.
    #[arg(long, default_value_t = designs::VERIFY_TOL)]
    tol: f64,
    /// Write the per-degree residual report as CSV.
    #[arg(long)]
    out_csv: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    t: u32,
    /// Point count; defaults to the built-in sizing for the order.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 32)]
    restarts: u32,
    /// Write the solved points to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the verification report as CSV.
    #[arg(long)]
    out_csv: Option<PathBuf>,
}

#[derive(Args)]
struct StudyArgs {
    /// Scenario config file (flat `key = value` text).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output CSV path (overrides the config's output.csv).
    #[arg(long)]
    out_csv: Option<PathBuf>,
    /// Optional SVG chart path (overrides the config's output.svg).
    #[arg(long)]
    out_svg: Option<PathBuf>,
    /// Override every seed in the config.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct GravityArgs {
    /// Design order (1, 2 or 3).
    #[arg(long)]
    t: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 32)]
    restarts: u32,
    /// Evolution time for the coherence figure of merit, seconds.
    #[arg(long, default_value_t = 1.0)]
    time_s: f64,
    #[arg(long)]
    out_csv: Option<PathBuf>,
}

#[derive(Args)]
struct SpinArgs {
    /// Design order; catalog orders use the catalog, others the solver.
    #[arg(long)]
    t: u32,
    /// Highest polynomial field degree to test.
    #[arg(long)]
    field_order: Option<u32>,
    #[arg(long, default_value_t = 100)]
    trials: u32,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out_csv: Option<PathBuf>,
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Scaling(a) => cmd_scaling(a),
        Command::Entangle(a) => cmd_entangle(a),
        Command::Gravity(a) => cmd_gravity(a),
        Command::Spin(a) => cmd_spin(a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::SolverFailed { .. } => EXIT_NO_CONVERGENCE,
                _ => EXIT_BAD_INPUT,
            }
        }
    }
}

/// Applies the output-directory override to relative paths.
fn resolve_out(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Some(dir) = std::env::var_os(OUT_DIR_ENV) {
            return PathBuf::from(dir).join(path);
        }
    }
    path.to_path_buf()
}

/// Atomic write: temp file in the target directory, then rename.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let path = resolve_out(path);
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let mut tmp = path.clone();
    let mut name = path
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_else(|| OsString::from("out"));
    name.push(".tmp");
    tmp.set_file_name(name);
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, &path)?;
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<i32> {
    let points = match &args.file {
        Some(path) => pointset::read(path)?,
        None => designs::catalog_points(args.t)?,
    };
    let t_max = (args.t + 1).min(crate::harmonics::MAX_DEGREE);
    let report = designs::verify_design(&points, t_max, args.tol)?;
    for (i, r) in report.residuals.iter().enumerate() {
        println!("l={} residual={:e}", i + 1, r);
    }
    println!("certified_t = {}", report.certified_t);
    if let Some(out) = &args.out_csv {
        write_atomic(out, &report.to_csv())?;
    }
    Ok(if report.certified_t >= args.t {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn cmd_solve(args: SolveArgs) -> Result<i32> {
    let n = args.n.unwrap_or_else(|| solver::default_point_count(args.t));
    let opts = SolveOptions {
        restarts: args.restarts,
        ..Default::default()
    };
    let design = solver::solve_design(args.t, n, args.seed, &opts)?;
    println!(
        "solved t={} with n={} points, residual {:e}",
        design.t, n, design.residual
    );
    let text = pointset::to_string(&design.points);
    match &args.out {
        Some(path) => write_atomic(path, &text)?,
        None => print!("{text}"),
    }
    if let Some(out) = &args.out_csv {
        let report = designs::verify_design(&design.points, args.t, opts.verify_tol)?;
        write_atomic(out, &report.to_csv())?;
    }
    Ok(EXIT_OK)
}

fn load_scenario(args: &StudyArgs) -> Result<ScenarioConfig> {
    let mut cfg = match &args.config {
        Some(path) => ScenarioConfig::load(path)?,
        None => ScenarioConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.design.seed = seed;
        cfg.optimizer.seed = seed;
    }
    Ok(cfg)
}

fn study_outputs(
    args: &StudyArgs,
    cfg: &ScenarioConfig,
    default_csv: &str,
) -> (PathBuf, Option<PathBuf>) {
    let csv = args
        .out_csv
        .clone()
        .or_else(|| cfg.output.csv.clone())
        .unwrap_or_else(|| PathBuf::from(default_csv));
    let svg = args.out_svg.clone().or_else(|| cfg.output.svg.clone());
    (csv, svg)
}

fn print_rows(rows: &[StudyRow]) {
    for row in rows {
        match row {
            StudyRow::Row(r) => {
                let e_ent = r
                    .e_ent_hz
                    .map(|e| format!(" e_ent={e:.4e} Hz"))
                    .unwrap_or_default();
                println!(
                    "t={} n={} signal={:.4e} Hz noise={:.4e} Hz ratio={:.4e}{}",
                    r.t, r.n_points, r.delta_signal_hz, r.delta_noise_hz, r.ratio, e_ent
                );
            }
            StudyRow::Missing { t, reason } => {
                eprintln!("t={t}: missing ({reason})");
            }
        }
    }
}

fn study_chart(rows: &[StudyRow], with_e_ent: bool) -> String {
    let collect = |f: &dyn Fn(&phases::ScalingRow) -> Option<f64>| -> Vec<(f64, f64)> {
        rows.iter()
            .filter_map(|r| r.row())
            .filter_map(|r| f(r).map(|v| (r.t as f64, v)))
            .collect()
    };
    let mut series = vec![
        Series {
            label: "delta_signal (Hz)".into(),
            points: collect(&|r| Some(r.delta_signal_hz)),
        },
        Series {
            label: "delta_noise (Hz)".into(),
            points: collect(&|r| Some(r.delta_noise_hz)),
        },
    ];
    if with_e_ent {
        series.push(Series {
            label: "E_ent (Hz)".into(),
            points: collect(&|r| r.e_ent_hz),
        });
    }
    log_line_chart("rate scaling with design order", "t", "rate (Hz)", &series)
}

fn cmd_scaling(args: StudyArgs) -> Result<i32> {
    let cfg = load_scenario(&args)?;
    let (csv_path, svg_path) = study_outputs(&args, &cfg, "scaling.csv");
    let signal = crate::fields::SourceModel::point(
        cfg.signal.kind,
        cfg.signal.position,
        cfg.signal.strength,
    );
    let noise = crate::fields::SourceModel::point(
        cfg.noise.kind,
        cfg.noise.position,
        cfg.noise.strength,
    );
    let selection = if !cfg.pair.optimize {
        PairSelection::Default
    } else if cfg.pair.noise_worst_case {
        PairSelection::NoiseWorstCase
    } else {
        PairSelection::SignalOptimized
    };
    let inputs = StudyInputs {
        design_for: |t| cfg.design_points(t),
        body_radius: cfg.body.radius_m,
        unit_weight: cfg.body.unit_weight,
        kind: cfg.body.kind,
        signal: &signal,
        noise: &noise,
        selection,
        optimizer: cfg.optimizer.clone(),
    };
    let rows = phases::scaling_study(&inputs, &cfg.design.t_list);
    print_rows(&rows);
    write_atomic(&csv_path, &phases::rows_to_csv(&rows))?;
    if let Some(svg) = svg_path {
        write_atomic(&svg, &study_chart(&rows, false))?;
    }
    Ok(EXIT_OK)
}

fn cmd_entangle(args: StudyArgs) -> Result<i32> {
    let cfg = load_scenario(&args)?;
    let (csv_path, svg_path) = study_outputs(&args, &cfg, "entangle.csv");
    let noise = crate::fields::SourceModel::point(
        cfg.noise.kind,
        cfg.noise.position,
        cfg.noise.strength,
    );
    let inputs = entangle::TwoBodyInputs {
        design_for: |t| cfg.design_points(t),
        body_radius: cfg.body.radius_m,
        unit_weight: cfg.body.unit_weight,
        kind: cfg.body.kind,
        separation: cfg.separation,
        noise: &noise,
        optimizer: cfg.optimizer.clone(),
        time_s: cfg.time_s,
    };
    let rows = entangle::two_body_study(&inputs, &cfg.design.t_list);
    print_rows(&rows);
    write_atomic(&csv_path, &phases::rows_to_csv(&rows))?;
    if let Some(svg) = svg_path {
        write_atomic(&svg, &study_chart(&rows, true))?;
    }
    Ok(EXIT_OK)
}

fn cmd_gravity(args: GravityArgs) -> Result<i32> {
    let params = GravityParams {
        optimizer: OptimizerConfig {
            restarts: args.restarts,
            seed: args.seed,
            ..Default::default()
        },
        time_s: args.time_s,
        ..Default::default()
    };
    let report = entangle::gravitational_scenario(args.t, &params)?;
    print!("{}", report.summary());
    if let Some(out) = &args.out_csv {
        write_atomic(out, &phases::rows_to_csv(&[report.to_row()]))?;
    }
    Ok(EXIT_OK)
}

fn cmd_spin(args: SpinArgs) -> Result<i32> {
    let design = if designs::CATALOG_ORDERS.contains(&args.t) {
        designs::catalog_design(args.t)?
    } else {
        solver::solve_design(
            args.t,
            solver::default_point_count(args.t),
            args.seed,
            &SolveOptions::default(),
        )?
    };
    let field_order = args.field_order.unwrap_or(args.t + 1);
    let rotation = random_rotation(args.seed);
    let report = spindfs::dfs_check(&design, rotation, field_order, args.trials, args.seed);
    for row in &report.rows {
        println!("degree={} max_phase_rate={:e}", row.degree, row.max_phase_rate);
    }
    if let Some(out) = &args.out_csv {
        write_atomic(out, &report.to_csv())?;
    }
    Ok(EXIT_OK)
}
