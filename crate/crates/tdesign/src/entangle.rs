//! Two-body branch energies, entangling energy, phase-state evolution and
//! concurrence, plus the electrostatic and gravitational case studies.

use std::fmt::Write as _;

use crate::constants::{rad_per_s_to_hz, DIAMOND_DENSITY, HBAR};
use crate::designs;
use crate::error::{Error, Result};
use crate::fields::{interaction_energy, SourceModel};
use crate::geometry::{
    attach_spheres, build_body, sphere_mass, CentralSphere, Kind, RigidBody, Vec3,
};
use crate::optimize::{optimize_pair, OptimizerConfig};
use crate::phases::{phase_rate, OrientationPair, ScalingRow, StudyRow};

/// Interaction energies E_ij for body A in orientation Ri and body B in Rj.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairEnergies {
    pub e11: f64,
    pub e12: f64,
    pub e21: f64,
    pub e22: f64,
}

/// Exact interaction energy for the four branch configurations, with body B
/// displaced by `separation`.
pub fn pair_energies(
    a: &RigidBody,
    b: &RigidBody,
    pair_a: &OrientationPair,
    pair_b: &OrientationPair,
    separation: Vec3,
) -> Result<PairEnergies> {
    let energy = |ra: crate::geometry::Rotation, rb: crate::geometry::Rotation| -> Result<f64> {
        let body_a = a.rotated(ra);
        let mut body_b = b.rotated(rb);
        for e in &mut body_b.elements {
            e.position = e.position + separation;
        }
        for s in &mut body_b.spheres {
            s.center = s.center + separation;
        }
        interaction_energy(&body_a, &body_b)
    };
    Ok(PairEnergies {
        e11: energy(pair_a.r1, pair_b.r1)?,
        e12: energy(pair_a.r1, pair_b.r2)?,
        e21: energy(pair_a.r2, pair_b.r1)?,
        e22: energy(pair_a.r2, pair_b.r2)?,
    })
}

/// The non-separable branch-energy combination (E11 - E12) + (E22 - E21),
/// in joules. Zero exactly when the energies split as a_i + b_j.
pub fn entangling_energy(pe: &PairEnergies) -> f64 {
    (pe.e11 - pe.e12) + (pe.e22 - pe.e21)
}

/// Entangling energy expressed as a cycles-per-second rate.
pub fn entangling_energy_hz(pe: &PairEnergies) -> f64 {
    rad_per_s_to_hz(entangling_energy(pe) / HBAR)
}

/// Equal-amplitude four-branch phase state: amplitudes 1/2, phases phi_ij.
#[derive(Debug, Clone, Copy)]
pub struct TwoBodyState {
    /// [phi11, phi12, phi21, phi22] in radians.
    pub phases: [f64; 4],
}

impl TwoBodyState {
    /// The only entanglement-relevant combination of the four phases.
    pub fn combined_phase(&self) -> f64 {
        self.phases[0] - self.phases[1] - self.phases[2] + self.phases[3]
    }
}

/// Evolves the product state for time `t_seconds`: each branch acquires
/// phase (E_ij + delta_ij) T / hbar.
pub fn evolve(pe: &PairEnergies, deltas: [f64; 4], t_seconds: f64) -> TwoBodyState {
    assert!(t_seconds >= 0.0, "time must be non-negative");
    let phase =
        |e: f64, d: f64| -> f64 { (e + d) * t_seconds / HBAR };
    TwoBodyState {
        phases: [
            phase(pe.e11, deltas[0]),
            phase(pe.e12, deltas[1]),
            phase(pe.e21, deltas[2]),
            phase(pe.e22, deltas[3]),
        ],
    }
}

/// Concurrence of the four-branch state by the general pure two-qubit
/// formula C = 2 |a11 a22 - a12 a21| on amplitudes a_ij = e^{-i phi_ij}/2.
pub fn concurrence(state: &TwoBodyState) -> f64 {
    let [p11, p12, p21, p22] = state.phases;
    // a11 a22 and a12 a21 are quarter-magnitude phasors
    let (s1, c1) = (-(p11 + p22)).sin_cos();
    let (s2, c2) = (-(p12 + p21)).sin_cos();
    let re = c1 - c2;
    let im = s1 - s2;
    0.5 * (re * re + im * im).sqrt()
}

/// Closed form for equal-amplitude phase states:
/// |sin((phi11 - phi12 - phi21 + phi22) / 2)|.
pub fn phase_concurrence(combined_phase: f64) -> f64 {
    (combined_phase / 2.0).sin().abs()
}

/// Defaults follow the gravitational case study: diamond bodies with a
/// 10 um central sphere, total mass 1.83e-11 kg, 200 um apart, perturbed by
/// 100 kg at 20 m.
#[derive(Debug, Clone)]
pub struct GravityParams {
    pub density: f64,
    pub central_radius: f64,
    pub total_mass: f64,
    pub separation: Vec3,
    pub noise_mass: f64,
    pub noise_position: Vec3,
    pub optimizer: OptimizerConfig,
    /// Evolution time used for the coherence figure of merit.
    pub time_s: f64,
}

impl Default for GravityParams {
    fn default() -> Self {
        GravityParams {
            density: DIAMOND_DENSITY,
            central_radius: 1e-5,
            total_mass: 1.83e-11,
            separation: Vec3::new(0.0, 0.0, 2e-4),
            noise_mass: 100.0,
            // 20 m along the unit direction (9, 12, 20)/25, generic with
            // respect to both the separation axis and the design axes
            noise_position: Vec3::new(7.2, 9.6, 16.0),
            optimizer: OptimizerConfig::default(),
            time_s: 1.0,
        }
    }
}

/// Result of a two-body case study at one design order.
#[derive(Debug, Clone)]
pub struct ScenarioReport {
    pub t: u32,
    pub n_points: usize,
    pub e_ent_hz: f64,
    pub delta_noise_hz: f64,
    /// Rate induced on body A by body B held in its first orientation.
    pub delta_signal_hz: f64,
    pub pair: OrientationPair,
    pub e_ent_joules: f64,
    /// E_ent * T / hbar at the configured evolution time.
    pub entangling_phase: f64,
    /// |noise rate| * T at the configured evolution time.
    pub noise_phase: f64,
    /// The evolution time the phases refer to, seconds.
    pub time_s: f64,
}

impl ScenarioReport {
    pub fn to_row(&self) -> StudyRow {
        StudyRow::Row(ScalingRow {
            t: self.t,
            n_points: self.n_points,
            delta_signal_hz: self.delta_signal_hz,
            delta_noise_hz: self.delta_noise_hz,
            ratio: if self.delta_noise_hz == 0.0 {
                f64::INFINITY
            } else {
                self.delta_signal_hz / self.delta_noise_hz
            },
            e_ent_hz: Some(self.e_ent_hz),
        })
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "order t = {} ({} point elements per body)", self.t, self.n_points);
        let _ = writeln!(s, "  E_ent             = {:.6e} Hz ({:.6e} J)", self.e_ent_hz, self.e_ent_joules);
        let _ = writeln!(s, "  delta_noise       = {:.6e} Hz", self.delta_noise_hz);
        let _ = writeln!(s, "  delta_signal      = {:.6e} Hz", self.delta_signal_hz);
        let _ = writeln!(
            s,
            "  E_ent*T/hbar      = {:.6e} rad at T = {} s",
            self.entangling_phase, self.time_s
        );
        let _ = writeln!(s, "  |delta_noise|*T   = {:.6e} rad", self.noise_phase);
        s
    }
}

/// Builds the diamond sphere-composite body for a given catalog order.
pub fn gravitational_body(t: u32, params: &GravityParams) -> Result<RigidBody> {
    let design = designs::catalog_design(t)?;
    let base = build_body(&design.points, 1.0, 1.0, Kind::Mass)?;
    let central_mass = sphere_mass(params.central_radius, params.density);
    let remaining = params.total_mass - central_mass;
    if remaining <= 0.0 {
        return Err(Error::MassBudgetExceeded {
            total: central_mass,
            budget: params.total_mass,
        });
    }
    let peripheral_mass = remaining / design.len() as f64;
    attach_spheres(
        &base,
        CentralSphere {
            radius: params.central_radius,
            mass: central_mass,
        },
        peripheral_mass,
        params.density,
        Some(params.total_mass),
    )
}

/// Gravitational two-body study: builds two identical sphere-composite
/// bodies, optimizes a shared orientation pair for |E_ent|, and reports the
/// entangling rate together with the dephasing rate from the noise mass.
pub fn gravitational_scenario(t: u32, params: &GravityParams) -> Result<ScenarioReport> {
    if !(1..=3).contains(&t) {
        return Err(Error::GravityOrderUnsupported(t));
    }
    let body = gravitational_body(t, params)?;
    let n_points = body.elements.len() - 1; // peripherals
    let noise = SourceModel::point(Kind::Mass, params.noise_position, params.noise_mass);

    let body_ref = &body;
    let sep = params.separation;
    let (pair, _) = optimize_pair(
        |p| match pair_energies(body_ref, body_ref, p, p, sep) {
            Ok(pe) => entangling_energy(&pe).abs(),
            Err(_) => f64::NAN,
        },
        &params.optimizer,
    )?;

    let pe = pair_energies(&body, &body, &pair, &pair, sep)?;
    let e_ent = entangling_energy(&pe);
    let delta_noise = phase_rate(&body, &pair, &noise)?;
    let partner = SourceModel::from_body(&body.rotated(pair.r1), sep);
    let delta_signal = phase_rate(&body, &pair, &partner)?;

    Ok(ScenarioReport {
        t,
        n_points,
        e_ent_hz: rad_per_s_to_hz(e_ent.abs() / HBAR),
        delta_noise_hz: delta_noise.magnitude_hz(),
        delta_signal_hz: delta_signal.magnitude_hz(),
        pair,
        e_ent_joules: e_ent,
        entangling_phase: (e_ent.abs() / HBAR) * params.time_s,
        noise_phase: delta_noise.magnitude_rad_per_s() * params.time_s,
        time_s: params.time_s,
    })
}

/// Electrostatic two-body study at one design order: charge bodies of the
/// given radius and per-point weight, shared optimized pair for |E_ent|.
pub struct TwoBodyInputs<'a, F>
where
    F: Fn(u32) -> Result<Vec<Vec3>>,
{
    pub design_for: F,
    pub body_radius: f64,
    pub unit_weight: f64,
    pub kind: Kind,
    pub separation: Vec3,
    pub noise: &'a SourceModel,
    pub optimizer: OptimizerConfig,
    pub time_s: f64,
}

pub fn two_body_study<F>(inputs: &TwoBodyInputs<'_, F>, t_list: &[u32]) -> Vec<StudyRow>
where
    F: Fn(u32) -> Result<Vec<Vec3>>,
{
    let mut rows = Vec::with_capacity(t_list.len());
    for &t in t_list {
        match two_body_row(inputs, t) {
            Ok(report) => rows.push(report.to_row()),
            Err(e) => rows.push(StudyRow::Missing {
                t,
                reason: e.to_string(),
            }),
        }
    }
    rows
}

pub fn two_body_row<F>(inputs: &TwoBodyInputs<'_, F>, t: u32) -> Result<ScenarioReport>
where
    F: Fn(u32) -> Result<Vec<Vec3>>,
{
    let points = (inputs.design_for)(t)?;
    let body = build_body(&points, inputs.body_radius, inputs.unit_weight, inputs.kind)?;
    let body_ref = &body;
    let sep = inputs.separation;
    let (pair, _) = optimize_pair(
        |p| match pair_energies(body_ref, body_ref, p, p, sep) {
            Ok(pe) => entangling_energy(&pe).abs(),
            Err(_) => f64::NAN,
        },
        &inputs.optimizer,
    )?;
    let pe = pair_energies(&body, &body, &pair, &pair, sep)?;
    let e_ent = entangling_energy(&pe);
    let delta_noise = phase_rate(&body, &pair, inputs.noise)?;
    let partner = SourceModel::from_body(&body.rotated(pair.r1), sep);
    let delta_signal = phase_rate(&body, &pair, &partner)?;
    Ok(ScenarioReport {
        t,
        n_points: points.len(),
        e_ent_hz: rad_per_s_to_hz(e_ent.abs() / HBAR),
        delta_noise_hz: delta_noise.magnitude_hz(),
        delta_signal_hz: delta_signal.magnitude_hz(),
        pair,
        e_ent_joules: e_ent,
        entangling_phase: (e_ent.abs() / HBAR) * inputs.time_s,
        noise_phase: delta_noise.magnitude_rad_per_s() * inputs.time_s,
        time_s: inputs.time_s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{COULOMB, ELEMENTARY_CHARGE};
    use crate::designs::catalog_points;
    use crate::geometry::{random_rotation, Element, Rotation};
    use approx::assert_relative_eq;

    fn trivial_pair() -> OrientationPair {
        OrientationPair::new(Rotation::IDENTITY, Rotation::IDENTITY)
    }

    #[test]
    fn trivial_pairs_give_equal_entries() {
        let pts = catalog_points(2).unwrap();
        let body = build_body(&pts, 2e-6, ELEMENTARY_CHARGE, Kind::Charge).unwrap();
        let pe = pair_energies(
            &body,
            &body,
            &trivial_pair(),
            &trivial_pair(),
            Vec3::new(0.0, 0.0, 1e-5),
        )
        .unwrap();
        assert_eq!(pe.e11, pe.e12);
        assert_eq!(pe.e11, pe.e21);
        assert_eq!(pe.e11, pe.e22);
        assert_eq!(entangling_energy(&pe), 0.0);
    }

    #[test]
    fn symmetric_body_makes_its_orientation_irrelevant() {
        // body A is a single origin charge: e11 = e21 and e12 = e22
        let a = RigidBody::new(
            vec![Element {
                position: Vec3::ZERO,
                weight: ELEMENTARY_CHARGE,
            }],
            Kind::Charge,
        );
        let b = build_body(&catalog_points(2).unwrap(), 2e-6, ELEMENTARY_CHARGE, Kind::Charge)
            .unwrap();
        let pair_a = OrientationPair::new(random_rotation(1), random_rotation(2));
        let pair_b = OrientationPair::new(random_rotation(3), random_rotation(4));
        let pe = pair_energies(&a, &b, &pair_a, &pair_b, Vec3::new(0.0, 0.0, 1e-5)).unwrap();
        assert_eq!(pe.e11, pe.e21);
        assert_eq!(pe.e12, pe.e22);
        assert_eq!(entangling_energy(&pe), 0.0);
    }

    #[test]
    fn entangling_energy_arithmetic() {
        let pe = PairEnergies {
            e11: 5.0,
            e12: 1.0,
            e21: 2.0,
            e22: 3.0,
        };
        assert_eq!(entangling_energy(&pe), 5.0);
    }

    #[test]
    fn separable_energies_never_entangle() {
        // e_ij = a_i + b_j with dyadic values keeps f64 arithmetic exact
        for (a1, a2, b1, b2) in [(0.5, 0.25, 1.0, 2.0), (3.0, -1.5, 0.125, -4.0)] {
            let pe = PairEnergies {
                e11: a1 + b1,
                e12: a1 + b2,
                e21: a2 + b1,
                e22: a2 + b2,
            };
            assert_eq!(entangling_energy(&pe), 0.0);
        }
    }

    #[test]
    fn gauge_offset_invariance() {
        let pe = PairEnergies {
            e11: 1.0,
            e12: 0.5,
            e21: 0.25,
            e22: 2.0,
        };
        let g = 4.0; // power of two: exact in f64
        let shifted = PairEnergies {
            e11: pe.e11 + g,
            e12: pe.e12 + g,
            e21: pe.e21 + g,
            e22: pe.e22 + g,
        };
        assert_eq!(entangling_energy(&pe), entangling_energy(&shifted));
    }

    #[test]
    fn tetrahedron_bodies_spread_is_degree_three_sized() {
        // Two 2-design charge bodies, R = 2 um, 10 um apart: branch energies
        // sit within a spread around the monopole term governed by the
        // degree-3 cross moments, i.e. a few times (R/d)^3 relative.
        let pts = catalog_points(2).unwrap();
        let body = build_body(&pts, 2e-6, ELEMENTARY_CHARGE, Kind::Charge).unwrap();
        let d = 1e-5;
        let q = 4.0 * ELEMENTARY_CHARGE;
        let monopole = COULOMB * q * q / d;
        let mut max_spread = 0.0f64;
        for seed in 0..20u64 {
            let pair_a = OrientationPair::new(random_rotation(seed), random_rotation(seed + 100));
            let pair_b =
                OrientationPair::new(random_rotation(seed + 200), random_rotation(seed + 300));
            let pe =
                pair_energies(&body, &body, &pair_a, &pair_b, Vec3::new(0.0, 0.0, d)).unwrap();
            for e in [pe.e11, pe.e12, pe.e21, pe.e22] {
                max_spread = max_spread.max((e - monopole).abs());
            }
        }
        let cube = (2e-6f64 / d).powi(3); // 8e-3
        assert!(
            max_spread < 20.0 * cube * monopole,
            "spread {max_spread:e} vs monopole {monopole:e}"
        );
        assert!(
            max_spread > 0.01 * cube * monopole,
            "spread {max_spread:e} unexpectedly small"
        );
    }

    #[test]
    fn zero_time_gives_product_state() {
        let pe = PairEnergies {
            e11: 1e-30,
            e12: 2e-30,
            e21: 3e-30,
            e22: 4e-30,
        };
        let state = evolve(&pe, [0.0; 4], 0.0);
        assert_eq!(concurrence(&state), 0.0);
    }

    #[test]
    fn common_delta_is_a_global_phase() {
        let pe = PairEnergies {
            e11: 2.0 * HBAR,
            e12: 0.5 * HBAR,
            e21: 1.5 * HBAR,
            e22: 1.0 * HBAR,
        };
        let a = evolve(&pe, [0.0; 4], 0.7);
        let b = evolve(&pe, [0.3 * HBAR; 4], 0.7);
        assert_relative_eq!(concurrence(&a), concurrence(&b), epsilon = 1e-12);
    }

    #[test]
    fn pi_combined_phase_is_maximally_entangled() {
        let e_ent = 1.0 * HBAR; // rad/s
        let pe = PairEnergies {
            e11: e_ent,
            e12: 0.0,
            e21: 0.0,
            e22: 0.0,
        };
        let t = std::f64::consts::PI;
        let state = evolve(&pe, [0.0; 4], t);
        assert_relative_eq!(concurrence(&state), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn closed_form_matches_general_concurrence() {
        // the general two-qubit route must agree with |sin(phi/2)| across
        // arbitrary branch phases
        let mut failures = 0;
        for i in 0..200 {
            let s = i as f64;
            let state = TwoBodyState {
                phases: [0.3 * s, -0.11 * s + 1.0, 0.07 * s - 2.0, 0.23 * s],
            };
            let general = concurrence(&state);
            let closed = phase_concurrence(state.combined_phase());
            if (general - closed).abs() > 1e-12 {
                failures += 1;
            }
        }
        assert_eq!(failures, 0);
    }

    #[test]
    fn concurrence_period_matches_entangling_energy() {
        let e_ent = 2.0 * HBAR;
        let pe = PairEnergies {
            e11: e_ent,
            e12: 0.0,
            e21: 0.0,
            e22: 0.0,
        };
        let period = 2.0 * std::f64::consts::PI * HBAR / e_ent;
        for k in 0..5 {
            let t = 0.37 + k as f64 * 0.21;
            let a = concurrence(&evolve(&pe, [0.0; 4], t));
            let b = concurrence(&evolve(&pe, [0.0; 4], t + period));
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn unsupported_gravity_order_is_rejected() {
        let err = gravitational_scenario(4, &GravityParams::default());
        assert!(matches!(err, Err(Error::GravityOrderUnsupported(4))));
        let err = gravitational_scenario(0, &GravityParams::default());
        assert!(matches!(err, Err(Error::GravityOrderUnsupported(0))));
    }

    #[test]
    fn central_only_bodies_never_entangle() {
        // strip the peripherals: all four branch energies coincide exactly
        let params = GravityParams::default();
        let body = gravitational_body(1, &params).unwrap();
        let central_only = RigidBody {
            elements: body.elements[..1].to_vec(),
            kind: Kind::Mass,
            spheres: body.spheres[..1].to_vec(),
        };
        let pair = OrientationPair::new(random_rotation(5), random_rotation(6));
        let pe = pair_energies(
            &central_only,
            &central_only,
            &pair,
            &pair,
            params.separation,
        )
        .unwrap();
        assert_eq!(entangling_energy(&pe), 0.0);
    }
}
