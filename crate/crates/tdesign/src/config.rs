//! Scenario configuration: flat key-value text with dotted section keys.
//!
//! ```text
//! # charged scaling scenario
//! design.source = catalog
//! design.t_list = 1,2,3,5
//! body.radius_m = 2e-6
//! signal.position = 1e-5 0 0
//! ```
//!
//! Parsing is strict: unknown keys and malformed values are errors, so a
//! typo cannot silently change a study.

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::geometry::{Kind, Vec3};
use crate::optimize::OptimizerConfig;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesignSource {
    Catalog,
    Solve,
    File,
}

#[derive(Debug, Clone)]
pub struct DesignCfg {
    pub source: DesignSource,
    pub t_list: Vec<u32>,
    /// Solver point count; None means the default sizing.
    pub n: Option<usize>,
    pub seed: u64,
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct BodyCfg {
    pub kind: Kind,
    pub radius_m: f64,
    pub unit_weight: f64,
}

#[derive(Debug, Clone)]
pub struct SourceCfg {
    pub kind: Kind,
    pub strength: f64,
    pub position: Vec3,
}

#[derive(Debug, Clone)]
pub struct PairCfg {
    pub optimize: bool,
    pub noise_worst_case: bool,
}

#[derive(Debug, Clone)]
pub struct OutputCfg {
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

/// A fully parsed scenario. Defaults reproduce the charged case study:
/// a 2 um body of elementary charges, a single signal charge at 10 um on
/// the x axis, and 10^3 elementary charges 200 um away along the unit
/// direction (9, 12, 20)/25.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub design: DesignCfg,
    pub body: BodyCfg,
    pub signal: SourceCfg,
    pub noise: SourceCfg,
    pub pair: PairCfg,
    pub optimizer: OptimizerConfig,
    pub separation: Vec3,
    pub time_s: f64,
    pub output: OutputCfg,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        let e = crate::constants::ELEMENTARY_CHARGE;
        ScenarioConfig {
            design: DesignCfg {
                source: DesignSource::Catalog,
                t_list: vec![1, 2, 3, 5],
                n: None,
                seed: 1,
                file: None,
            },
            body: BodyCfg {
                kind: Kind::Charge,
                radius_m: 2e-6,
                unit_weight: e,
            },
            signal: SourceCfg {
                kind: Kind::Charge,
                strength: e,
                position: Vec3::new(1e-5, 0.0, 0.0),
            },
            noise: SourceCfg {
                kind: Kind::Charge,
                strength: 1e3 * e,
                position: Vec3::new(7.2e-5, 9.6e-5, 1.6e-4),
            },
            pair: PairCfg {
                optimize: true,
                noise_worst_case: false,
            },
            optimizer: OptimizerConfig::default(),
            separation: Vec3::new(0.0, 0.0, 1e-5),
            time_s: 1.0,
            output: OutputCfg {
                csv: None,
                svg: None,
            },
        }
    }
}

fn bad(key: &str, value: &str, want: &str) -> Error {
    Error::Config(format!("key {key:?}: cannot parse {value:?} as {want}"))
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.parse().map_err(|_| bad(key, v, "a number"))
}

fn parse_u64(key: &str, v: &str) -> Result<u64> {
    v.parse().map_err(|_| bad(key, v, "an integer"))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(bad(key, v, "true or false")),
    }
}

fn parse_kind(key: &str, v: &str) -> Result<Kind> {
    match v {
        "charge" => Ok(Kind::Charge),
        "mass" => Ok(Kind::Mass),
        _ => Err(bad(key, v, "charge or mass")),
    }
}

fn parse_vec3(key: &str, v: &str) -> Result<Vec3> {
    let parts: Vec<&str> = v.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(bad(key, v, "three numbers"));
    }
    Ok(Vec3::new(
        parse_f64(key, parts[0])?,
        parse_f64(key, parts[1])?,
        parse_f64(key, parts[2])?,
    ))
}

fn parse_t_list(key: &str, v: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for part in v.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(
            part.parse()
                .map_err(|_| bad(key, part, "a design order"))?,
        );
    }
    Ok(out)
}

impl ScenarioConfig {
    /// Parses config text over the defaults, rejecting unknown keys.
    pub fn parse(text: &str) -> Result<ScenarioConfig> {
        let mut cfg = ScenarioConfig::default();
        let mut unknown = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "line {}: expected `key = value`, got {line:?}",
                    lineno + 1
                )));
            };
            let key = key.trim();
            let value = value.trim();
            match key {
                "design.source" => {
                    cfg.design.source = match value {
                        "catalog" => DesignSource::Catalog,
                        "solve" => DesignSource::Solve,
                        "file" => DesignSource::File,
                        _ => return Err(bad(key, value, "catalog | solve | file")),
                    }
                }
                "design.t_list" => cfg.design.t_list = parse_t_list(key, value)?,
                "design.n" => cfg.design.n = Some(parse_u64(key, value)? as usize),
                "design.seed" => cfg.design.seed = parse_u64(key, value)?,
                "design.file" => cfg.design.file = Some(PathBuf::from(value)),
                "body.kind" => cfg.body.kind = parse_kind(key, value)?,
                "body.radius_m" => cfg.body.radius_m = parse_f64(key, value)?,
                "body.unit_weight" => cfg.body.unit_weight = parse_f64(key, value)?,
                "signal.kind" => cfg.signal.kind = parse_kind(key, value)?,
                "signal.strength" => cfg.signal.strength = parse_f64(key, value)?,
                "signal.position" => cfg.signal.position = parse_vec3(key, value)?,
                "noise.kind" => cfg.noise.kind = parse_kind(key, value)?,
                "noise.strength" => cfg.noise.strength = parse_f64(key, value)?,
                "noise.position" => cfg.noise.position = parse_vec3(key, value)?,
                "pair.optimize" => cfg.pair.optimize = parse_bool(key, value)?,
                "pair.noise_worst_case" => {
                    cfg.pair.noise_worst_case = parse_bool(key, value)?
                }
                "optimizer.restarts" => {
                    cfg.optimizer.restarts = parse_u64(key, value)? as u32
                }
                "optimizer.seed" => cfg.optimizer.seed = parse_u64(key, value)?,
                "optimizer.max_iters" => {
                    cfg.optimizer.max_iters = parse_u64(key, value)? as u32
                }
                "two_body.separation" => cfg.separation = parse_vec3(key, value)?,
                "evolution.time_s" => cfg.time_s = parse_f64(key, value)?,
                "output.csv" => cfg.output.csv = Some(PathBuf::from(value)),
                "output.svg" => cfg.output.svg = Some(PathBuf::from(value)),
                _ => unknown.push(format!("{key} (line {})", lineno + 1)),
            }
        }
        if !unknown.is_empty() {
            return Err(Error::Config(format!(
                "unknown keys: {}",
                unknown.join(", ")
            )));
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<ScenarioConfig> {
        let text = std::fs::read_to_string(path)?;
        ScenarioConfig::parse(&text)
    }

    fn validate(&self) -> Result<()> {
        let mut problems = Vec::new();
        if self.design.t_list.is_empty() {
            problems.push("design.t_list is empty".to_string());
        }
        if self.design.t_list.contains(&0) {
            problems.push("design.t_list contains 0".to_string());
        }
        if self.design.source == DesignSource::File && self.design.file.is_none() {
            problems.push("design.source = file requires design.file".to_string());
        }
        if self.body.radius_m <= 0.0 || self.body.radius_m.is_nan() {
            problems.push("body.radius_m must be positive".to_string());
        }
        if self.body.kind != self.signal.kind || self.body.kind != self.noise.kind {
            problems.push("body, signal and noise kinds must match".to_string());
        }
        if self.time_s < 0.0 || self.time_s.is_nan() {
            problems.push("evolution.time_s must be non-negative".to_string());
        }
        if self.optimizer.restarts == 0 {
            problems.push("optimizer.restarts must be at least 1".to_string());
        }
        for (name, src) in [("signal", &self.signal), ("noise", &self.noise)] {
            if src.position.norm() <= self.body.radius_m {
                problems.push(format!("{name}.position lies inside the body radius"));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(problems.join("; ")))
        }
    }

    /// Resolves design points for one order according to the design source.
    pub fn design_points(&self, t: u32) -> Result<Vec<Vec3>> {
        match self.design.source {
            DesignSource::Catalog => Ok(crate::designs::catalog_design(t)?.points),
            DesignSource::Solve => {
                let n = self
                    .design
                    .n
                    .unwrap_or_else(|| crate::solver::default_point_count(t));
                let d = crate::solver::solve_design(
                    t,
                    n,
                    self.design.seed,
                    &crate::solver::SolveOptions::default(),
                )?;
                Ok(d.points)
            }
            DesignSource::File => {
                let path = self
                    .design
                    .file
                    .as_ref()
                    .expect("validated: file source has a path");
                let points = crate::pointset::read(path)?;
                let d = crate::designs::TDesign::from_points(
                    points,
                    t,
                    crate::solver::SolveOptions::default().verify_tol,
                    crate::designs::Provenance::File,
                )?;
                Ok(d.points)
            }
        }
    }
}
