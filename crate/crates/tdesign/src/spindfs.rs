//! Decoherence-free spin subspaces from design geometry.
//!
//! Up-spins sit on a design, down-spins on a rotated copy. Under a field
//! with polynomial spatial dependence of degree at most the design order,
//! both sets see the same energy with opposite sign, so the basis states
//! |1..10..0> and |0..01..1> accumulate no relative phase.

use std::fmt::Write as _;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constants::HBAR;
use crate::designs::TDesign;
use crate::geometry::{rotate, Rotation, Vec3};
use crate::monomials::{self, Exponents};

/// Spins at fixed positions: sign +1 for up, -1 for down.
#[derive(Debug, Clone)]
pub struct SpinConfiguration {
    pub sites: Vec<(Vec3, i8)>,
    /// Magnetic moment magnitude, J/T.
    pub moment: f64,
}

impl SpinConfiguration {
    /// Up-spins on the design, down-spins on the rotated design. Sites are
    /// interleaved so that a spin and its rotated partner are adjacent;
    /// sequential summation then cancels coincident configurations exactly.
    pub fn dfs_pair(design: &TDesign, r: Rotation, moment: f64) -> SpinConfiguration {
        let mut sites = Vec::with_capacity(2 * design.len());
        for &p in &design.points {
            sites.push((p, 1));
            sites.push((rotate(r, p), -1));
        }
        SpinConfiguration { sites, moment }
    }

    /// Flips every spin.
    pub fn flipped(&self) -> SpinConfiguration {
        SpinConfiguration {
            sites: self.sites.iter().map(|&(p, s)| (p, -s)).collect(),
            moment: self.moment,
        }
    }
}

/// Scalar polynomial field in (x, y, z), tesla.
#[derive(Debug, Clone)]
pub struct FieldPolynomial {
    pub degree: u32,
    pub terms: Vec<(Exponents, f64)>,
}

impl FieldPolynomial {
    pub fn constant(b0: f64) -> FieldPolynomial {
        FieldPolynomial {
            degree: 0,
            terms: vec![((0, 0, 0), b0)],
        }
    }

    /// Homogeneous polynomial of the given degree with i.i.d. uniform
    /// coefficients in [-1, 1].
    pub fn random_homogeneous<R: Rng>(degree: u32, rng: &mut R) -> FieldPolynomial {
        let terms = monomials::of_degree(degree)
            .into_iter()
            .map(|e| (e, rng.gen::<f64>() * 2.0 - 1.0))
            .collect();
        FieldPolynomial { degree, terms }
    }

    pub fn eval(&self, p: Vec3) -> f64 {
        self.terms
            .iter()
            .map(|&(e, c)| c * monomials::eval(e, p.x, p.y, p.z))
            .sum()
    }
}

/// Zeeman-style energy: moment times the signed sum of field values.
pub fn spin_energy(cfg: &SpinConfiguration, field: &FieldPolynomial) -> f64 {
    cfg.moment
        * cfg
            .sites
            .iter()
            .map(|&(p, s)| s as f64 * field.eval(p))
            .sum::<f64>()
}

/// One degree of a DFS check.
#[derive(Debug, Clone, Copy)]
pub struct DfsRow {
    pub degree: u32,
    /// Max over trials of |relative phase rate| normalized by the
    /// all-sites energy scale of the same field.
    pub max_phase_rate: f64,
}

#[derive(Debug, Clone)]
pub struct DfsReport {
    pub t: u32,
    pub rows: Vec<DfsRow>,
}

impl DfsReport {
    /// CSV with header `degree,max_phase_rate`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("degree,max_phase_rate\n");
        for row in &self.rows {
            let _ = writeln!(s, "{},{}", row.degree, row.max_phase_rate);
        }
        s
    }
}

/// Phase-rate cancellation check: for random homogeneous fields of each
/// degree up to `field_degree`, the relative phase rate between the two
/// basis states is 2 spin_energy / hbar; degrees <= design.t must vanish,
/// degree design.t + 1 generically must not.
pub fn dfs_check(
    design: &TDesign,
    r: Rotation,
    field_degree: u32,
    trials: u32,
    seed: u64,
) -> DfsReport {
    let moment = 9.274_010_078_3e-24; // Bohr magneton, J/T
    let cfg = SpinConfiguration::dfs_pair(design, r, moment);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(field_degree as usize);
    for degree in 1..=field_degree {
        let mut worst = 0.0f64;
        for _ in 0..trials.max(1) {
            let field = FieldPolynomial::random_homogeneous(degree, &mut rng);
            let rate = 2.0 * spin_energy(&cfg, &field) / HBAR;
            let scale: f64 = cfg
                .sites
                .iter()
                .map(|&(p, _)| field.eval(p).abs())
                .sum::<f64>()
                * 2.0
                * moment
                / HBAR;
            if scale > 0.0 {
                worst = worst.max(rate.abs() / scale);
            }
        }
        rows.push(DfsRow {
            degree,
            max_phase_rate: worst,
        });
    }
    DfsReport { t: design.t, rows }
}
