//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),

    #[error("mass must be positive, got {0}")]
    NonPositiveMass(f64),

    #[error("material density must be set and positive, got {0}")]
    DensityNotSet(f64),

    #[error("spheres exceed the mass budget: {total} > {budget}")]
    MassBudgetExceeded { total: f64, budget: f64 },

    #[error("sphere bodies must have kind = mass")]
    SpheresOnChargeBody,

    #[error("no closed-form design for t = {0}; use the solver or a point file")]
    NotInCatalog(u32),

    #[error("point {index} is off the unit sphere (|p| = {norm})")]
    OffSphere { index: usize, norm: f64 },

    #[error("harmonic degree {0} exceeds the supported maximum {1}")]
    DegreeTooLarge(u32, u32),

    #[error("solver did not converge after {restarts} restarts (best residual {best_residual:e})")]
    SolverFailed { restarts: u32, best_residual: f64 },

    #[error("evaluation point coincides with a source position")]
    EvalAtSource,

    #[error("source at the expansion origin")]
    SourceAtOrigin,

    #[error("requested order {requested} exceeds stored expansion order {stored}")]
    OrderExceedsExpansion { requested: u32, stored: u32 },

    #[error("body extends to radius {body_radius} but the nearest source is at {source_distance}; truncated evaluation diverges")]
    OutsideConvergence { body_radius: f64, source_distance: f64 },

    #[error("kind mismatch: {0}")]
    KindMismatch(String),

    #[error("bodies overlap: {0}")]
    BodyOverlap(String),

    #[error("all optimizer restarts produced non-finite objective values")]
    ObjectiveNotFinite,

    #[error("{path}:{line}: {message}")]
    PointFile {
        path: String,
        line: usize,
        message: String,
    },

    #[error("invalid scenario config: {0}")]
    Config(String),

    #[error("gravitational case study supports t in {{1, 2, 3}}, got {0}")]
    GravityOrderUnsupported(u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
