//! Real spherical harmonics on the unit sphere, with gradients.
//!
//! For a unit vector p = (x, y, z) the harmonics are evaluated as
//!
//! ```text
//!   Y_{l,0}  = N_{l,0} Q_l^0(z)
//!   Y_{l,m}  = N_{l,m} Q_l^m(z) C_m(x, y)      m > 0
//!   Y_{l,-m} = N_{l,m} Q_l^m(z) S_m(x, y)      m > 0
//! ```
//!
//! where `C_m + i S_m = (x + i y)^m` and `Q_l^m` is the associated Legendre
//! function with the `(1 - z^2)^{m/2}` prefactor removed, which makes it a
//! polynomial in z satisfying the plain upward three-term recursion. The
//! representation stays finite and smooth at the poles, and the ambient
//! derivatives of the right-hand side (treating x, y, z as independent) give
//! the surface gradient after tangential projection.

use crate::error::{Error, Result};
use crate::geometry::Vec3;

/// Upward Legendre recursions are well conditioned through this degree.
pub const MAX_DEGREE: u32 = 32;

/// Flat index of (l, m) with m in -l..=l.
#[inline]
pub fn index(l: u32, m: i32) -> usize {
    (l * l) as usize + (l as i32 + m) as usize
}

/// Number of coefficients for degrees 0..=lmax.
#[inline]
pub fn coeff_count(lmax: u32) -> usize {
    ((lmax + 1) * (lmax + 1)) as usize
}

pub fn check_degree(lmax: u32) -> Result<()> {
    if lmax > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(lmax, MAX_DEGREE));
    }
    Ok(())
}

/// Evaluator for all real harmonics up to a fixed maximum degree.
/// Construction precomputes the normalization constants.
#[derive(Debug, Clone)]
pub struct Harmonics {
    lmax: u32,
    /// N_{l,m} for m >= 0 (includes the sqrt(2) factor for m > 0).
    norm: Vec<f64>,
}

impl Harmonics {
    pub fn new(lmax: u32) -> Result<Harmonics> {
        check_degree(lmax)?;
        let mut norm = vec![0.0; coeff_count(lmax)];
        for l in 0..=lmax {
            for m in 0..=l {
                // (2l+1)/(4 pi) * (l-m)!/(l+m)!
                let mut ratio = 1.0;
                for k in (l - m + 1)..=(l + m) {
                    ratio /= k as f64;
                }
                let mut n = ((2 * l + 1) as f64 / (4.0 * std::f64::consts::PI) * ratio).sqrt();
                if m > 0 {
                    n *= std::f64::consts::SQRT_2;
                }
                norm[index(l, m as i32)] = n;
            }
        }
        Ok(Harmonics { lmax, norm })
    }

    pub fn lmax(&self) -> u32 {
        self.lmax
    }

    pub fn coeff_count(&self) -> usize {
        coeff_count(self.lmax)
    }

    /// Evaluates all Y_{l,m}(p) for l <= lmax into `out` (resized as needed).
    /// `p` must be a unit vector.
    pub fn eval_into(&self, p: Vec3, out: &mut Vec<f64>) {
        self.eval_impl(p, out, None);
    }

    /// Evaluates values and ambient gradients of the polynomial extension.
    /// The surface gradient is the tangential projection of `grad`.
    pub fn eval_grad_into(&self, p: Vec3, out: &mut Vec<f64>, grad: &mut Vec<Vec3>) {
        grad.resize(self.coeff_count(), Vec3::ZERO);
        self.eval_impl(p, out, Some(grad));
    }

    pub fn eval(&self, p: Vec3) -> Vec<f64> {
        let mut out = Vec::new();
        self.eval_into(p, &mut out);
        out
    }

    fn eval_impl(&self, p: Vec3, out: &mut Vec<f64>, mut grad: Option<&mut Vec<Vec3>>) {
        let lmax = self.lmax;
        out.clear();
        out.resize(self.coeff_count(), 0.0);
        let (x, y, z) = (p.x, p.y, p.z);

        // C_m, S_m and their predecessors for the x/y derivatives.
        let mut c_prev = 0.0;
        let mut s_prev = 0.0;
        let mut c_m = 1.0;
        let mut s_m = 0.0;
        // Q_m^m with the (1-z^2)^{m/2} prefactor removed: (2m-1)!!.
        let mut q_mm = 1.0;

        for m in 0..=lmax {
            if m > 0 {
                let c_new = x * c_m - y * s_m;
                let s_new = x * s_m + y * c_m;
                c_prev = c_m;
                s_prev = s_m;
                c_m = c_new;
                s_m = s_new;
                q_mm *= (2 * m - 1) as f64;
            }
            // Upward recursion in l at fixed m, tracking d/dz alongside.
            let mut q_prev2 = 0.0; // Q_{l-2}^m
            let mut q_prev = q_mm; // Q_{l-1}^m, seeded with Q_m^m
            let mut dq_prev2 = 0.0;
            let mut dq_prev = 0.0;
            for l in m..=lmax {
                let (q, dq) = if l == m {
                    (q_mm, 0.0)
                } else if l == m + 1 {
                    let q = z * (2 * m + 1) as f64 * q_mm;
                    let dq = (2 * m + 1) as f64 * q_mm;
                    (q, dq)
                } else {
                    let a = (2 * l - 1) as f64;
                    let b = (l + m - 1) as f64;
                    let inv = 1.0 / (l - m) as f64;
                    let q = (a * z * q_prev - b * q_prev2) * inv;
                    let dq = (a * (q_prev + z * dq_prev) - b * dq_prev2) * inv;
                    (q, dq)
                };
                if l > m {
                    q_prev2 = q_prev;
                    q_prev = q;
                    dq_prev2 = dq_prev;
                    dq_prev = dq;
                }

                let n = self.norm[index(l, m as i32)];
                if m == 0 {
                    out[index(l, 0)] = n * q;
                    if let Some(g) = grad.as_deref_mut() {
                        g[index(l, 0)] = Vec3::new(0.0, 0.0, n * dq);
                    }
                } else {
                    let mf = m as f64;
                    out[index(l, m as i32)] = n * q * c_m;
                    out[index(l, -(m as i32))] = n * q * s_m;
                    if let Some(g) = grad.as_deref_mut() {
                        g[index(l, m as i32)] = Vec3::new(
                            n * q * mf * c_prev,
                            n * q * (-mf) * s_prev,
                            n * dq * c_m,
                        );
                        g[index(l, -(m as i32))] = Vec3::new(
                            n * q * mf * s_prev,
                            n * q * mf * c_prev,
                            n * dq * s_m,
                        );
                    }
                }
            }
        }
    }
}
