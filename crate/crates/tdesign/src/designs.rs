//! Spherical t-designs: analytic catalog, verification, frame potential.
//!
//! A point set {P_i} on the unit sphere is a t-design when the average of
//! any polynomial of degree at most t over the points equals its average
//! over the sphere. Verification uses the equivalent condition that the
//! normalized sums of real spherical harmonics vanish for 1 <= l <= t.

use crate::error::{Error, Result};
use crate::geometry::Vec3;
use crate::harmonics::{self, Harmonics};

/// Points must sit on the unit sphere within this bound.
pub const SPHERE_TOL: f64 = 1e-9;

/// Default residual tolerance for certification.
pub const VERIFY_TOL: f64 = 1e-10;

/// How a design was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Catalog,
    Solved,
    File,
}

/// A certified spherical t-design.
#[derive(Debug, Clone)]
pub struct TDesign {
    pub points: Vec<Vec3>,
    /// Certified exactness order.
    pub t: u32,
    pub provenance: Provenance,
    /// Max normalized harmonic-sum magnitude over 1 <= l <= t.
    pub residual: f64,
}

impl TDesign {
    /// Certifies a point set at order `t` with tolerance `tol`.
    pub fn from_points(
        points: Vec<Vec3>,
        t: u32,
        tol: f64,
        provenance: Provenance,
    ) -> Result<TDesign> {
        let report = verify_design(&points, t, tol)?;
        if report.certified_t < t {
            return Err(Error::Config(format!(
                "points certify only to t = {} (requested {t}); worst residual {:e}",
                report.certified_t,
                report.max_residual_up_to(t)
            )));
        }
        Ok(TDesign {
            points,
            t,
            provenance,
            residual: report.max_residual_up_to(t),
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Per-degree residuals r_l = max_m |sum_i Y_lm(P_i)| / N for l = 1..=l_max.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    /// residuals[l - 1] is r_l.
    pub residuals: Vec<f64>,
    /// Tolerance used to certify.
    pub tol: f64,
    /// Largest t with r_l <= tol for all l <= t.
    pub certified_t: u32,
}

impl VerificationReport {
    pub fn residual(&self, l: u32) -> f64 {
        self.residuals[(l - 1) as usize]
    }

    pub fn max_residual_up_to(&self, t: u32) -> f64 {
        self.residuals[..t as usize]
            .iter()
            .fold(0.0f64, |a, &b| a.max(b))
    }

    /// CSV with header `l,residual`, one row per degree.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("l,residual\n");
        for (i, r) in self.residuals.iter().enumerate() {
            s.push_str(&format!("{},{}\n", i + 1, r));
        }
        s
    }
}

fn check_on_sphere(points: &[Vec3]) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        let n = p.norm();
        if !n.is_finite() || (n - 1.0).abs() > SPHERE_TOL {
            return Err(Error::OffSphere { index: i, norm: n });
        }
    }
    Ok(())
}

/// Computes per-degree residuals up to `t_max` and the certified order.
pub fn verify_design(points: &[Vec3], t_max: u32, tol: f64) -> Result<VerificationReport> {
    harmonics::check_degree(t_max)?;
    check_on_sphere(points)?;
    let h = Harmonics::new(t_max)?;
    let n = points.len().max(1) as f64;
    let mut sums = vec![0.0f64; h.coeff_count()];
    let mut buf = Vec::new();
    for &p in points {
        h.eval_into(p.normalized(), &mut buf);
        for (s, v) in sums.iter_mut().zip(&buf) {
            *s += v;
        }
    }
    let mut residuals = Vec::with_capacity(t_max as usize);
    for l in 1..=t_max {
        let r = (-(l as i32)..=l as i32)
            .map(|m| (sums[harmonics::index(l, m)] / n).abs())
            .fold(0.0f64, f64::max);
        residuals.push(r);
    }
    let mut certified_t = 0;
    for (i, &r) in residuals.iter().enumerate() {
        if r <= tol {
            certified_t = (i + 1) as u32;
        } else {
            break;
        }
    }
    Ok(VerificationReport {
        residuals,
        tol,
        certified_t,
    })
}

/// Frame potential of order t: sum over 1 <= l <= t of the squared
/// normalized harmonic sums. Non-negative, zero exactly on t-designs.
pub fn frame_potential(points: &[Vec3], t: u32) -> Result<f64> {
    harmonics::check_degree(t)?;
    check_on_sphere(points)?;
    let h = Harmonics::new(t)?;
    let n = points.len().max(1) as f64;
    let mut sums = vec![0.0f64; h.coeff_count()];
    let mut buf = Vec::new();
    for &p in points {
        h.eval_into(p.normalized(), &mut buf);
        for (s, v) in sums.iter_mut().zip(&buf) {
            *s += v;
        }
    }
    let mut phi = 0.0;
    for l in 1..=t {
        for m in -(l as i32)..=l as i32 {
            let s = sums[harmonics::index(l, m)] / n;
            phi += s * s;
        }
    }
    Ok(phi)
}

/// Orders with a closed-form catalog entry.
pub const CATALOG_ORDERS: [u32; 4] = [1, 2, 3, 5];

/// Exact point coordinates for the closed-form designs:
/// antipodal pair (t=1), regular tetrahedron (t=2), regular octahedron
/// (t=3), regular icosahedron (t=5).
pub fn catalog_points(t: u32) -> Result<Vec<Vec3>> {
    match t {
        1 => Ok(vec![Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.0, 0.0, -1.0)]),
        2 => {
            let c = 1.0 / 3.0f64.sqrt();
            Ok(vec![
                Vec3::new(c, c, c),
                Vec3::new(c, -c, -c),
                Vec3::new(-c, c, -c),
                Vec3::new(-c, -c, c),
            ])
        }
        3 => Ok(vec![
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(-1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
            Vec3::new(0.0, -1.0, 0.0),
            Vec3::new(0.0, 0.0, 1.0),
            Vec3::new(0.0, 0.0, -1.0),
        ]),
        5 => {
            // vertices (0, ±1, ±g) and cyclic shifts, normalized
            let g = (1.0 + 5.0f64.sqrt()) / 2.0;
            let n = (1.0 + g * g).sqrt();
            let (a, b) = (1.0 / n, g / n);
            let mut pts = Vec::with_capacity(12);
            for &s1 in &[1.0, -1.0] {
                for &s2 in &[1.0, -1.0] {
                    pts.push(Vec3::new(0.0, s1 * a, s2 * b));
                    pts.push(Vec3::new(s1 * a, s2 * b, 0.0));
                    pts.push(Vec3::new(s1 * b, 0.0, s2 * a));
                }
            }
            Ok(pts)
        }
        _ => Err(Error::NotInCatalog(t)),
    }
}

/// Returns the closed-form design for t in {1, 2, 3, 5}, verified at
/// construction.
pub fn catalog_design(t: u32) -> Result<TDesign> {
    let points = catalog_points(t)?;
    TDesign::from_points(points, t, VERIFY_TOL, Provenance::Catalog)
}
