//! Relative-phase accumulation rates between two orientations of a body,
//! signal/noise decomposition, and scaling studies across design order.
//!
//! Rates always come from exact potentials, never truncated series. The
//! energy difference V(R1·body) - V(R2·body) can sit dozens of orders of
//! magnitude below either energy, so the kernel rotates positions and
//! accumulates per-element potential differences in double-double
//! arithmetic; the design-point cancellations then survive to far below
//! anything f64 subtraction could resolve.

use std::fmt::Write as _;

use crate::constants::{energy_to_rad_per_s, rad_per_s_to_hz};
use crate::dd::{Dd, DdVec3};
use crate::error::{Error, Result};
use crate::fields::{coupling, SourceModel};
use crate::geometry::{RigidBody, Rotation};

/// The two branch orientations of a superposed body.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientationPair {
    pub r1: Rotation,
    pub r2: Rotation,
}

impl OrientationPair {
    pub fn new(r1: Rotation, r2: Rotation) -> OrientationPair {
        OrientationPair { r1, r2 }
    }

    pub fn swapped(self) -> OrientationPair {
        OrientationPair {
            r1: self.r2,
            r2: self.r1,
        }
    }
}

/// Signed relative phase accumulation rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseRate {
    pub rad_per_s: f64,
}

impl PhaseRate {
    pub fn hz(self) -> f64 {
        rad_per_s_to_hz(self.rad_per_s)
    }

    pub fn magnitude_hz(self) -> f64 {
        self.hz().abs()
    }

    pub fn magnitude_rad_per_s(self) -> f64 {
        self.rad_per_s.abs()
    }
}

/// Energy difference V(R1·body, src) - V(R2·body, src) in joules, carried
/// in double-double precision.
fn branch_energy_difference(
    body: &RigidBody,
    pair: &OrientationPair,
    src: &SourceModel,
) -> Result<Dd> {
    let mut acc = Dd::ZERO;
    for e in &body.elements {
        let a = pair.r1.apply_dd(e.position);
        let b = pair.r2.apply_dd(e.position);
        for s in &src.sources {
            let sp = DdVec3::from_f64(s.position.x, s.position.y, s.position.z);
            let da = a - sp;
            let db = b - sp;
            let na = da.dot(da).sqrt();
            let nb = db.dot(db).sqrt();
            if na.hi == 0.0 || nb.hi == 0.0 {
                return Err(Error::EvalAtSource);
            }
            // 1/|a - s| - 1/|b - s| = (nb - na) / (na nb)
            let term = (nb - na) / (na * nb);
            acc = acc + term * (e.weight * s.strength);
        }
    }
    Ok(acc * coupling(body.kind))
}

/// Rate at which the two orientation branches accumulate relative phase in
/// the source field: [V(R1·body) - V(R2·body)] / hbar.
pub fn phase_rate(body: &RigidBody, pair: &OrientationPair, src: &SourceModel) -> Result<PhaseRate> {
    if body.kind != src.kind {
        return Err(Error::KindMismatch(format!(
            "{} body in {} field",
            body.kind, src.kind
        )));
    }
    let diff = branch_energy_difference(body, pair, src)?;
    Ok(PhaseRate {
        rad_per_s: energy_to_rad_per_s(diff.to_f64()),
    })
}

/// Signal and noise rates for the same orientation pair.
#[derive(Debug, Clone, Copy)]
pub struct SignalNoise {
    pub delta_signal: PhaseRate,
    pub delta_noise: PhaseRate,
    /// |signal| / |noise|; infinite when the noise rate is exactly zero.
    pub ratio: f64,
}

pub fn signal_noise(
    body: &RigidBody,
    pair: &OrientationPair,
    signal_src: &SourceModel,
    noise_src: &SourceModel,
) -> Result<SignalNoise> {
    let delta_signal = phase_rate(body, pair, signal_src)?;
    let delta_noise = phase_rate(body, pair, noise_src)?;
    let ratio = if delta_noise.rad_per_s == 0.0 {
        f64::INFINITY
    } else {
        delta_signal.magnitude_rad_per_s() / delta_noise.magnitude_rad_per_s()
    };
    Ok(SignalNoise {
        delta_signal,
        delta_noise,
        ratio,
    })
}

/// The documented deterministic fallback pair when optimization is off:
/// identity against a quarter turn about an axis perpendicular to the
/// body's largest-moment direction.
pub fn default_pair(body: &RigidBody) -> OrientationPair {
    let axis = body.principal_axis().any_perpendicular();
    OrientationPair {
        r1: Rotation::IDENTITY,
        r2: Rotation::from_axis_angle(axis, std::f64::consts::FRAC_PI_2),
    }
}

/// One row of a scaling study.
#[derive(Debug, Clone)]
pub struct ScalingRow {
    pub t: u32,
    pub n_points: usize,
    pub delta_signal_hz: f64,
    pub delta_noise_hz: f64,
    pub ratio: f64,
    pub e_ent_hz: Option<f64>,
}

/// A study row, or the reason it is missing (e.g. solver failure).
#[derive(Debug, Clone)]
pub enum StudyRow {
    Row(ScalingRow),
    Missing { t: u32, reason: String },
}

impl StudyRow {
    pub fn t(&self) -> u32 {
        match self {
            StudyRow::Row(r) => r.t,
            StudyRow::Missing { t, .. } => *t,
        }
    }

    pub fn row(&self) -> Option<&ScalingRow> {
        match self {
            StudyRow::Row(r) => Some(r),
            StudyRow::Missing { .. } => None,
        }
    }
}

/// CSV schema shared by the scaling and two-body studies. Missing values
/// are written as empty fields; floats use shortest round-trip form.
pub fn rows_to_csv(rows: &[StudyRow]) -> String {
    let mut s = String::from("t,n_points,delta_signal_hz,delta_noise_hz,ratio,e_ent_hz\n");
    for row in rows {
        match row {
            StudyRow::Row(r) => {
                let _ = write!(
                    s,
                    "{},{},{},{},{}",
                    r.t, r.n_points, r.delta_signal_hz, r.delta_noise_hz, r.ratio
                );
                match r.e_ent_hz {
                    Some(e) => {
                        let _ = writeln!(s, ",{e}");
                    }
                    None => s.push_str(",\n"),
                }
            }
            StudyRow::Missing { t, .. } => {
                let _ = writeln!(s, "{t},,,,,");
            }
        }
    }
    s
}

/// Which pair the noise rate is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSelection {
    /// Deterministic default pair, no optimization.
    Default,
    /// Pair maximizing |signal rate|; noise evaluated at the same pair.
    SignalOptimized,
    /// Signal at its optimized pair, noise at its own worst-case pair.
    NoiseWorstCase,
}

/// Inputs for [`scaling_study`].
pub struct StudyInputs<'a, F>
where
    F: Fn(u32) -> Result<Vec<crate::geometry::Vec3>>,
{
    /// Produces unit-sphere design points for a given order.
    pub design_for: F,
    pub body_radius: f64,
    pub unit_weight: f64,
    pub kind: crate::geometry::Kind,
    pub signal: &'a SourceModel,
    pub noise: &'a SourceModel,
    pub selection: PairSelection,
    pub optimizer: crate::optimize::OptimizerConfig,
}

/// Per-order scan of signal and noise rates. Solver failures mark the row
/// missing and the scan continues. Deterministic given the seeds.
pub fn scaling_study<F>(inputs: &StudyInputs<'_, F>, t_list: &[u32]) -> Vec<StudyRow>
where
    F: Fn(u32) -> Result<Vec<crate::geometry::Vec3>>,
{
    let mut rows = Vec::with_capacity(t_list.len());
    for &t in t_list {
        match study_row(inputs, t) {
            Ok(row) => rows.push(StudyRow::Row(row)),
            Err(e) => rows.push(StudyRow::Missing {
                t,
                reason: e.to_string(),
            }),
        }
    }
    rows
}

fn study_row<F>(inputs: &StudyInputs<'_, F>, t: u32) -> Result<ScalingRow>
where
    F: Fn(u32) -> Result<Vec<crate::geometry::Vec3>>,
{
    let points = (inputs.design_for)(t)?;
    let body = crate::geometry::build_body(
        &points,
        inputs.body_radius,
        inputs.unit_weight,
        inputs.kind,
    )?;
    let signal_pair = match inputs.selection {
        PairSelection::Default => default_pair(&body),
        PairSelection::SignalOptimized | PairSelection::NoiseWorstCase => {
            let body_ref = &body;
            let (pair, _) = crate::optimize::optimize_pair(
                |p| match phase_rate(body_ref, p, inputs.signal) {
                    Ok(r) => r.magnitude_rad_per_s(),
                    Err(_) => f64::NAN,
                },
                &inputs.optimizer,
            )?;
            pair
        }
    };
    let sn = signal_noise(&body, &signal_pair, inputs.signal, inputs.noise)?;
    let delta_noise = match inputs.selection {
        PairSelection::NoiseWorstCase => {
            let body_ref = &body;
            let (_, worst) = crate::optimize::optimize_pair(
                |p| match phase_rate(body_ref, p, inputs.noise) {
                    Ok(r) => r.magnitude_rad_per_s(),
                    Err(_) => f64::NAN,
                },
                &inputs.optimizer,
            )?;
            PhaseRate { rad_per_s: worst }
        }
        _ => sn.delta_noise,
    };
    let ratio = if delta_noise.rad_per_s == 0.0 {
        f64::INFINITY
    } else {
        sn.delta_signal.magnitude_rad_per_s() / delta_noise.magnitude_rad_per_s()
    };
    Ok(ScalingRow {
        t,
        n_points: points.len(),
        delta_signal_hz: sn.delta_signal.magnitude_hz(),
        delta_noise_hz: delta_noise.magnitude_hz(),
        ratio,
        e_ent_hz: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::ELEMENTARY_CHARGE;
    use crate::designs::catalog_points;
    use crate::fields::{potential_energy, PotentialMode};
    use crate::geometry::{
        attach_spheres, build_body, random_rotation, random_rotation_with, CentralSphere, Kind,
        Vec3,
    };
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn charged_body(t: u32, radius: f64) -> RigidBody {
        build_body(&catalog_points(t).unwrap(), radius, ELEMENTARY_CHARGE, Kind::Charge).unwrap()
    }

    fn noise_source() -> SourceModel {
        SourceModel::point(
            Kind::Charge,
            Vec3::new(0.0, 0.0, 2e-4),
            1000.0 * ELEMENTARY_CHARGE,
        )
    }

    #[test]
    fn identical_orientations_give_zero() {
        let body = charged_body(2, 2e-6);
        let r = random_rotation(3);
        let pair = OrientationPair::new(r, r);
        let rate = phase_rate(&body, &pair, &noise_source()).unwrap();
        assert_eq!(rate.rad_per_s, 0.0);
    }

    #[test]
    fn central_sphere_alone_gives_zero() {
        let base = build_body(&catalog_points(1).unwrap(), 1.0, 1.0, Kind::Mass).unwrap();
        let composite = attach_spheres(
            &base,
            CentralSphere {
                radius: 1e-5,
                mass: 1e-12,
            },
            1e-15,
            3510.0,
            None,
        )
        .unwrap();
        // keep only the central element
        let central_only = RigidBody {
            elements: composite.elements[..1].to_vec(),
            kind: Kind::Mass,
            spheres: composite.spheres[..1].to_vec(),
        };
        let src = SourceModel::point(Kind::Mass, Vec3::new(20.0, 0.0, 0.0), 100.0);
        let pair = OrientationPair::new(random_rotation(1), random_rotation(2));
        let rate = phase_rate(&central_only, &pair, &src).unwrap();
        assert_eq!(rate.rad_per_s, 0.0, "origin point is rotation invariant");
    }

    #[test]
    fn antisymmetry_under_swap() {
        let body = charged_body(2, 2e-6);
        let pair = OrientationPair::new(random_rotation(5), random_rotation(6));
        let src = noise_source();
        let a = phase_rate(&body, &pair, &src).unwrap();
        let b = phase_rate(&body, &pair.swapped(), &src).unwrap();
        assert_eq!(a.rad_per_s, -b.rad_per_s);
    }

    #[test]
    fn linearity_in_source_strength() {
        let body = charged_body(3, 2e-6);
        let pair = OrientationPair::new(random_rotation(7), random_rotation(8));
        let base = phase_rate(&body, &pair, &noise_source()).unwrap();
        let scaled_src = SourceModel::point(
            Kind::Charge,
            Vec3::new(0.0, 0.0, 2e-4),
            3.5 * 1000.0 * ELEMENTARY_CHARGE,
        );
        let scaled = phase_rate(&body, &pair, &scaled_src).unwrap();
        let rel = (scaled.rad_per_s - 3.5 * base.rad_per_s).abs() / scaled.rad_per_s.abs();
        assert!(rel <= 1e-12, "rel {rel}");
    }

    #[test]
    fn global_rotation_covariance() {
        let body = charged_body(2, 2e-6);
        let pair = OrientationPair::new(random_rotation(9), random_rotation(10));
        let src = noise_source();
        let base = phase_rate(&body, &pair, &src).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        for _ in 0..10 {
            let g = random_rotation_with(&mut rng);
            let rotated_pair =
                OrientationPair::new(g.compose(pair.r1), g.compose(pair.r2));
            let rotated_src = SourceModel::point(
                Kind::Charge,
                g.apply(Vec3::new(0.0, 0.0, 2e-4)),
                1000.0 * ELEMENTARY_CHARGE,
            );
            let moved = phase_rate(&body, &rotated_pair, &rotated_src).unwrap();
            let rel = (moved.rad_per_s - base.rad_per_s).abs() / base.rad_per_s.abs();
            assert!(rel <= 1e-11, "rel {rel}");
        }
    }

    #[test]
    fn truncated_rate_vanishes_while_exact_rate_is_degree_t_plus_1() {
        // For a certified t-design the order-t truncated field produces no
        // relative phase; the exact rate is dominated by the degree-(t+1)
        // cross term for distant sources (L/R = 100 here).
        for t in [1u32, 2, 3] {
            let body = charged_body(t, 2e-6);
            let pair = OrientationPair::new(random_rotation(21), random_rotation(22));
            let src = noise_source();
            // truncated-field rate via potential_energy
            let v1 = potential_energy(
                &body.rotated(pair.r1),
                &src,
                PotentialMode::Truncated(t),
            )
            .unwrap();
            let v2 = potential_energy(
                &body.rotated(pair.r2),
                &src,
                PotentialMode::Truncated(t),
            )
            .unwrap();
            let v_scale = v1.abs().max(v2.abs());
            assert!(
                (v1 - v2).abs() <= 1e-9 * v_scale,
                "t={t}: truncated rate {} vs scale {}",
                (v1 - v2).abs(),
                v_scale
            );
            // exact rate vs the degree-(t+1) term of the expansion
            let exact = phase_rate(&body, &pair, &src).unwrap();
            let exp = crate::fields::expand(&src, t + 1).unwrap();
            let mut cross = 0.0;
            for e in &body.elements {
                cross += e.weight
                    * (exp.eval_degree(pair.r1.apply(e.position), t + 1).unwrap()
                        - exp.eval_degree(pair.r2.apply(e.position), t + 1).unwrap());
            }
            let cross_rate = energy_to_rad_per_s(cross);
            let ratio = exact.rad_per_s / cross_rate;
            assert!(
                (0.5..=2.0).contains(&ratio),
                "t={t}: exact/degree-(t+1) ratio {ratio}"
            );
        }
    }

    #[test]
    fn noise_rate_drops_by_two_to_the_t_plus_2_when_source_recedes() {
        // The leading surviving term of the rate scales as R^{t+1}/L^{t+2}
        // (degree t+1 coefficients carry 1/L^{t+2}), so doubling the source
        // distance at fixed strength divides the rate by 2^{t+2}.
        let t = 2;
        let body = charged_body(t, 2e-6);
        let pair = OrientationPair::new(random_rotation(31), random_rotation(32));
        let near = noise_source();
        let far = SourceModel::point(
            Kind::Charge,
            Vec3::new(0.0, 0.0, 4e-4),
            1000.0 * ELEMENTARY_CHARGE,
        );
        let a = phase_rate(&body, &pair, &near).unwrap().magnitude_rad_per_s();
        let b = phase_rate(&body, &pair, &far).unwrap().magnitude_rad_per_s();
        let drop = a / b;
        let expect = 2.0f64.powi((t + 2) as i32);
        assert!(
            (drop / expect - 1.0).abs() < 0.2,
            "drop {drop} vs {expect}"
        );
    }

    #[test]
    fn identical_sources_give_unit_ratio() {
        let body = charged_body(2, 2e-6);
        let pair = OrientationPair::new(random_rotation(41), random_rotation(42));
        let src = noise_source();
        let sn = signal_noise(&body, &pair, &src, &src).unwrap();
        assert_eq!(sn.ratio, 1.0);
    }

    #[test]
    fn default_pair_is_deterministic_and_nontrivial() {
        let body = charged_body(2, 2e-6);
        let a = default_pair(&body);
        let b = default_pair(&body);
        assert_eq!(a.r1, b.r1);
        assert_eq!(a.r2, b.r2);
        assert!(a.r1.angle_to(a.r2) > 0.1);
    }

    #[test]
    fn csv_schema_and_missing_fields() {
        let rows = vec![
            StudyRow::Row(ScalingRow {
                t: 1,
                n_points: 2,
                delta_signal_hz: 0.5,
                delta_noise_hz: 0.25,
                ratio: 2.0,
                e_ent_hz: None,
            }),
            StudyRow::Missing {
                t: 4,
                reason: "solver failed".into(),
            },
        ];
        let csv = rows_to_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "t,n_points,delta_signal_hz,delta_noise_hz,ratio,e_ent_hz"
        );
        assert_eq!(lines[1], "1,2,0.5,0.25,2,");
        assert_eq!(lines[2], "4,,,,,");
    }
}
