//! Source models, exact pairwise potentials, multipole expansion about the
//! origin, and body potential / interaction energies.
//!
//! The expansion is carried in real solid harmonics: for sources at
//! distances r_j > |x| from the origin,
//!
//! ```text
//!   phi(x) = sum_j k s_j / |x - x_j|
//!          = sum_{l,m} c_lm |x|^l Y_lm(x/|x|)
//!   c_lm   = k sum_j s_j 4 pi / (2l+1) Y_lm(x_j/r_j) / r_j^{l+1}
//! ```
//!
//! Each degree of the truncated series reproduces the degree-l content of
//! the exact potential, so truncation errors at radius R fall off as
//! (R/L)^{l+1} with source distance L.

use crate::constants::{COULOMB, GRAVITATION};
use crate::error::{Error, Result};
use crate::geometry::{Kind, RigidBody, Vec3};
use crate::harmonics::{self, Harmonics};

/// Coupling constant entering k·s/r: 1/(4πε₀) for charge, −G for mass.
pub fn coupling(kind: Kind) -> f64 {
    match kind {
        Kind::Charge => COULOMB,
        Kind::Mass => -GRAVITATION,
    }
}

/// A point source of the perturbing field.
#[derive(Debug, Clone, Copy)]
pub struct Source {
    pub position: Vec3,
    pub strength: f64,
}

/// A distant collection of point charges or masses.
#[derive(Debug, Clone)]
pub struct SourceModel {
    pub kind: Kind,
    pub sources: Vec<Source>,
}

impl SourceModel {
    pub fn new(kind: Kind, sources: Vec<Source>) -> SourceModel {
        assert!(
            sources
                .iter()
                .all(|s| s.position.is_finite() && s.strength.is_finite()),
            "non-finite source"
        );
        SourceModel { kind, sources }
    }

    /// Single point source.
    pub fn point(kind: Kind, position: Vec3, strength: f64) -> SourceModel {
        SourceModel::new(
            kind,
            vec![Source {
                position,
                strength,
            }],
        )
    }

    /// A rigid body viewed as a field source, optionally displaced.
    pub fn from_body(body: &RigidBody, offset: Vec3) -> SourceModel {
        SourceModel::new(
            body.kind,
            body.elements
                .iter()
                .map(|e| Source {
                    position: e.position + offset,
                    strength: e.weight,
                })
                .collect(),
        )
    }

    pub fn min_distance(&self) -> f64 {
        self.sources
            .iter()
            .map(|s| s.position.norm())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn total_strength(&self) -> f64 {
        self.sources.iter().map(|s| s.strength).sum()
    }
}

/// Exact potential of the source set at `x` (J/C for charge, J/kg for mass).
pub fn exact_potential(src: &SourceModel, x: Vec3) -> Result<f64> {
    let k = coupling(src.kind);
    let mut acc = 0.0;
    let mut comp = 0.0; // Neumaier compensation
    for s in &src.sources {
        let d = (x - s.position).norm();
        if d == 0.0 {
            return Err(Error::EvalAtSource);
        }
        let term = k * s.strength / d;
        let t = acc + term;
        comp += if acc.abs() >= term.abs() {
            (acc - t) + term
        } else {
            (term - t) + acc
        };
        acc = t;
    }
    Ok(acc + comp)
}

/// Interior multipole expansion of a source potential about the origin.
#[derive(Debug, Clone)]
pub struct MultipoleExpansion {
    pub order: u32,
    pub kind: Kind,
    /// c_lm indexed by [`harmonics::index`].
    pub coefficients: Vec<f64>,
    /// Convergence radius: the truncated series is valid for |x| below this.
    pub min_source_distance: f64,
}

/// Expands the source potential about the origin, exactly per degree.
pub fn expand(src: &SourceModel, n_max: u32) -> Result<MultipoleExpansion> {
    harmonics::check_degree(n_max)?;
    let h = Harmonics::new(n_max)?;
    let k = coupling(src.kind);
    let mut coefficients = vec![0.0f64; h.coeff_count()];
    let mut buf = Vec::new();
    for s in &src.sources {
        let r = s.position.norm();
        if r == 0.0 {
            return Err(Error::SourceAtOrigin);
        }
        h.eval_into(s.position.normalized(), &mut buf);
        // per-degree radial factor 1/r^{l+1}
        let mut radial = 1.0 / r;
        for l in 0..=n_max {
            let scale = k * s.strength * 4.0 * std::f64::consts::PI / (2 * l + 1) as f64 * radial;
            for m in -(l as i32)..=l as i32 {
                let idx = harmonics::index(l, m);
                coefficients[idx] += scale * buf[idx];
            }
            radial /= r;
        }
    }
    Ok(MultipoleExpansion {
        order: n_max,
        kind: src.kind,
        coefficients,
        min_source_distance: src.min_distance(),
    })
}

impl MultipoleExpansion {
    /// Partial sum over degrees 0..=order at `x`.
    pub fn eval_truncated(&self, x: Vec3, order: u32) -> Result<f64> {
        if order > self.order {
            return Err(Error::OrderExceedsExpansion {
                requested: order,
                stored: self.order,
            });
        }
        let r = x.norm();
        let mut acc = self.coefficients[0] * 0.5 / std::f64::consts::PI.sqrt();
        if r == 0.0 || order == 0 {
            return Ok(acc);
        }
        let h = Harmonics::new(order)?;
        let buf = h.eval(x.normalized());
        let mut radial = r;
        for l in 1..=order {
            for m in -(l as i32)..=l as i32 {
                let idx = harmonics::index(l, m);
                acc += self.coefficients[idx] * radial * buf[idx];
            }
            radial *= r;
        }
        Ok(acc)
    }

    /// Contribution of a single degree l at `x`.
    pub fn eval_degree(&self, x: Vec3, l: u32) -> Result<f64> {
        if l > self.order {
            return Err(Error::OrderExceedsExpansion {
                requested: l,
                stored: self.order,
            });
        }
        if l == 0 {
            return Ok(self.coefficients[0] * 0.5 / std::f64::consts::PI.sqrt());
        }
        let r = x.norm();
        if r == 0.0 {
            return Ok(0.0);
        }
        let h = Harmonics::new(l)?;
        let buf = h.eval(x.normalized());
        let mut acc = 0.0;
        for m in -(l as i32)..=l as i32 {
            let idx = harmonics::index(l, m);
            acc += self.coefficients[idx] * r.powi(l as i32) * buf[idx];
        }
        Ok(acc)
    }
}

/// How to evaluate the field in [`potential_energy`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialMode {
    Exact,
    Truncated(u32),
}

/// Total energy of a body in the source field: sum of w_i phi(p_i).
/// Spheres enter through their center elements (shell theorem).
pub fn potential_energy(body: &RigidBody, src: &SourceModel, mode: PotentialMode) -> Result<f64> {
    if body.kind != src.kind {
        return Err(Error::KindMismatch(format!(
            "{} body in {} field",
            body.kind, src.kind
        )));
    }
    match mode {
        PotentialMode::Exact => {
            let mut acc = 0.0;
            for e in &body.elements {
                acc += e.weight * exact_potential(src, e.position)?;
            }
            Ok(acc)
        }
        PotentialMode::Truncated(order) => {
            let body_radius = body.radius();
            let source_distance = src.min_distance();
            if body_radius >= source_distance {
                return Err(Error::OutsideConvergence {
                    body_radius,
                    source_distance,
                });
            }
            let exp = expand(src, order)?;
            let mut acc = 0.0;
            for e in &body.elements {
                acc += e.weight * exp.eval_truncated(e.position, order)?;
            }
            Ok(acc)
        }
    }
}

/// Exact pairwise interaction energy between two bodies at their absolute
/// positions. Spheres interact through their centers (shell theorem, exact
/// for non-overlapping uniform spheres).
///
/// The pairwise terms are accumulated in a sorted compensated sum, so the
/// result is bitwise symmetric in its arguments.
pub fn interaction_energy(a: &RigidBody, b: &RigidBody) -> Result<f64> {
    if a.kind != b.kind {
        return Err(Error::KindMismatch(format!(
            "{} body against {} body",
            a.kind, b.kind
        )));
    }
    // sphere overlap check across bodies
    for sa in &a.spheres {
        for sb in &b.spheres {
            let gap = (sa.center - sb.center).norm();
            if gap < sa.radius + sb.radius {
                return Err(Error::BodyOverlap(format!(
                    "spheres at distance {gap} with radii {} + {}",
                    sa.radius, sb.radius
                )));
            }
        }
    }
    let k = coupling(a.kind);
    let mut terms = Vec::with_capacity(a.elements.len() * b.elements.len());
    for ea in &a.elements {
        for eb in &b.elements {
            let d = (ea.position - eb.position).norm();
            if d == 0.0 {
                return Err(Error::BodyOverlap(
                    "coincident point elements".to_string(),
                ));
            }
            terms.push(k * ea.weight * eb.weight / d);
        }
    }
    terms.sort_by(f64::total_cmp);
    let mut acc = 0.0;
    let mut comp = 0.0;
    for term in terms {
        let t = acc + term;
        comp += if acc.abs() >= term.abs() {
            (acc - t) + term
        } else {
            (term - t) + acc
        };
        acc = t;
    }
    Ok(acc + comp)
}
