//! Numerical construction of spherical t-designs.
//!
//! Minimizes the frame potential over N points on the sphere by projected
//! gradient descent in Cartesian coordinates: the Euclidean gradient is
//! projected onto each point's tangent plane, a backtracking line search
//! (spectral/Barzilai-Borwein trial step) picks the step length, and points
//! are renormalized after each move. The Cartesian chart has no pole
//! singularities, so descent paths may cross the poles freely.
//!
//! Restarts are independent Haar-random initializations; the first restart
//! whose result certifies at the verification tolerance wins. If none
//! certifies, the error carries the best residual seen.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::designs::{verify_design, Provenance, TDesign};
use crate::error::{Error, Result};
use crate::geometry::Vec3;
use crate::harmonics::{index, Harmonics};

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Independent random initializations before giving up.
    pub restarts: u32,
    /// Iteration cap per restart.
    pub max_iters: u32,
    /// Stop when the projected gradient norm falls below this.
    pub grad_tol: f64,
    /// Stop when the frame potential falls below this.
    pub phi_tol: f64,
    /// Certification tolerance on the solved design.
    pub verify_tol: f64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            restarts: 32,
            max_iters: 100_000,
            grad_tol: 1e-12,
            phi_tol: 1e-22,
            verify_tol: 1e-9,
        }
    }
}

/// Default point count for order t: the conjectured existence bound t^2/2,
/// rounded to even and padded, but never below a floor that keeps descent
/// from random starts reliable at higher orders.
pub fn default_point_count(t: u32) -> usize {
    let formula = {
        let half = (t * t).div_ceil(2) as usize;
        let even = half + half % 2;
        even + 2
    };
    // Floors calibrated by seed sweeps: below these, random-start descent
    // frequently stalls in local minima (or no design of that size exists).
    let floor = match t {
        0..=3 => 2,
        4 => 14,
        5 => 18,
        6 => 26,
        7 => 32,
        8 => 42,
        9 => 52,
        _ => ((t * t + 2 * t + 3).div_ceil(2) + 1) as usize,
    };
    formula.max(floor)
}

struct Workspace {
    h: Harmonics,
    n_coef: usize,
    vals: Vec<Vec<f64>>,
    grads: Vec<Vec<Vec3>>,
    sums: Vec<f64>,
}

impl Workspace {
    fn new(t: u32, n: usize) -> Result<Workspace> {
        let h = Harmonics::new(t)?;
        let n_coef = h.coeff_count();
        Ok(Workspace {
            h,
            n_coef,
            vals: vec![Vec::new(); n],
            grads: vec![Vec::new(); n],
            sums: vec![0.0; n_coef],
        })
    }

    /// Frame potential only (line-search evaluations).
    fn phi(&mut self, points: &[Vec3], t: u32) -> f64 {
        let n = points.len() as f64;
        self.sums.iter_mut().for_each(|s| *s = 0.0);
        let mut buf = std::mem::take(&mut self.vals[0]);
        for &p in points {
            self.h.eval_into(p, &mut buf);
            for (s, v) in self.sums.iter_mut().zip(&buf) {
                *s += v;
            }
        }
        self.vals[0] = buf;
        let mut phi = 0.0;
        for l in 1..=t {
            for m in -(l as i32)..=l as i32 {
                let s = self.sums[index(l, m)] / n;
                phi += s * s;
            }
        }
        phi
    }

    /// Frame potential and the tangential gradient at every point.
    fn phi_grad(&mut self, points: &[Vec3], t: u32, grad_out: &mut [Vec3]) -> f64 {
        let n = points.len() as f64;
        self.sums.iter_mut().for_each(|s| *s = 0.0);
        for (i, &p) in points.iter().enumerate() {
            let (vals, grads) = (&mut self.vals[i], &mut self.grads[i]);
            self.h.eval_grad_into(p, vals, grads);
            for (s, v) in self.sums.iter_mut().zip(vals.iter()) {
                *s += v;
            }
        }
        let mut phi = 0.0;
        let inv_n2 = 1.0 / (n * n);
        for l in 1..=t {
            for m in -(l as i32)..=l as i32 {
                let s = self.sums[index(l, m)];
                phi += s * s * inv_n2;
            }
        }
        let lo = index(1, -1);
        for (i, &p) in points.iter().enumerate() {
            let mut g = Vec3::ZERO;
            for k in lo..self.n_coef {
                g = g + self.grads[i][k] * (2.0 * self.sums[k] * inv_n2);
            }
            // tangential projection
            grad_out[i] = g - p * g.dot(p);
        }
        phi
    }
}

fn normalize_all(points: &mut [Vec3]) {
    for p in points.iter_mut() {
        *p = p.normalized();
    }
}

fn descend(mut points: Vec<Vec3>, t: u32, opts: &SolveOptions, ws: &mut Workspace) -> Vec<Vec3> {
    let n = points.len();
    let mut grad = vec![Vec3::ZERO; n];
    let mut phi = ws.phi_grad(&points, t, &mut grad);
    let mut step = 0.1;
    let mut prev_points: Option<(Vec<Vec3>, Vec<Vec3>)> = None;

    for _ in 0..opts.max_iters {
        let gnorm2: f64 = grad.iter().map(|g| g.dot(*g)).sum();
        if phi <= opts.phi_tol || gnorm2.sqrt() <= opts.grad_tol {
            break;
        }
        // Barzilai-Borwein trial step from the previous move, when available.
        if let Some((ref px, ref pg)) = prev_points {
            let mut ss = 0.0;
            let mut sy = 0.0;
            for i in 0..n {
                let s = points[i] - px[i];
                let y = grad[i] - pg[i];
                ss += s.dot(s);
                sy += s.dot(y);
            }
            if sy > 1e-300 {
                step = (ss / sy).clamp(1e-12, 1e3);
            }
        }
        // Backtracking Armijo line search on the retracted step.
        let mut alpha = step;
        let mut accepted = false;
        let mut candidate = vec![Vec3::ZERO; n];
        for _ in 0..60 {
            for i in 0..n {
                candidate[i] = (points[i] - grad[i] * alpha).normalized();
            }
            let phi_new = ws.phi(&candidate, t);
            if phi_new <= phi - 1e-4 * alpha * gnorm2 {
                prev_points = Some((points.clone(), grad.clone()));
                points.copy_from_slice(&candidate);
                phi = ws.phi_grad(&points, t, &mut grad);
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if !accepted {
            break; // step collapsed below float resolution
        }
    }
    points
}

/// Solves for an n-point t-design by multi-start descent. Deterministic for
/// a given seed; fails with the best residual if no restart certifies.
pub fn solve_design(t: u32, n: usize, seed: u64, opts: &SolveOptions) -> Result<TDesign> {
    assert!(n >= 2, "need at least two points");
    assert!(t >= 1, "order must be at least 1");
    let mut ws = Workspace::new(t, n)?;
    let mut best_residual = f64::INFINITY;

    for restart in 0..opts.restarts {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (restart as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut points: Vec<Vec3> = (0..n)
            .map(|_| loop {
                let v = Vec3::new(
                    rng.gen::<f64>() * 2.0 - 1.0,
                    rng.gen::<f64>() * 2.0 - 1.0,
                    rng.gen::<f64>() * 2.0 - 1.0,
                );
                let norm = v.norm();
                if norm > 0.1 && norm < 1.0 {
                    break v.normalized();
                }
            })
            .collect();
        normalize_all(&mut points);
        let solved = descend(points, t, opts, &mut ws);
        let report = verify_design(&solved, t, opts.verify_tol)?;
        let residual = report.max_residual_up_to(t);
        if report.certified_t >= t {
            return Ok(TDesign {
                points: solved,
                t,
                provenance: Provenance::Solved,
                residual,
            });
        }
        if residual < best_residual {
            best_residual = residual;
        }
    }
    Err(Error::SolverFailed {
        restarts: opts.restarts,
        best_residual,
    })
}
