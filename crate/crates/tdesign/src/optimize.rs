//! Derivative-free maximization over pairs of orientations.
//!
//! The search space SO(3) x SO(3) is charted by a 6-dimensional
//! rotation-vector around a base pair; a Nelder-Mead simplex descends the
//! negated objective in that chart. Whenever the best vertex drifts more
//! than a half turn from the chart center the chart is re-centered there,
//! which keeps the parametrization away from its angle-pi singularity.
//! Restarts are independent Haar-random base pairs; merging is
//! deterministic (best value wins, ties broken by lowest restart index).

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{random_rotation_with, Rotation, Vec3};
use crate::phases::OrientationPair;

#[derive(Debug, Clone)]
pub struct OptimizerConfig {
    pub restarts: u32,
    pub seed: u64,
    /// Iteration cap per restart.
    pub max_iters: u32,
    /// Convergence threshold on simplex extent in the rotation-vector chart.
    pub xtol: f64,
    /// Relative convergence threshold on objective spread.
    pub ftol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 32,
            seed: 1,
            max_iters: 2000,
            xtol: 1e-10,
            ftol: 1e-12,
        }
    }
}

/// Chart state: base pair plus a 6-vector of rotation-vector coordinates.
#[derive(Clone, Copy)]
struct Chart {
    base1: Rotation,
    base2: Rotation,
}

impl Chart {
    fn pair(&self, x: &[f64; 6]) -> OrientationPair {
        let r1 = Rotation::from_rotation_vector(Vec3::new(x[0], x[1], x[2])).compose(self.base1);
        let r2 = Rotation::from_rotation_vector(Vec3::new(x[3], x[4], x[5])).compose(self.base2);
        OrientationPair { r1, r2 }
    }

    fn recenter(&mut self, x: &[f64; 6]) {
        let pair = self.pair(x);
        self.base1 = pair.r1;
        self.base2 = pair.r2;
    }
}

struct Vertex {
    x: [f64; 6],
    /// Negated objective (the simplex minimizes).
    f: f64,
}

/// Maximizes `objective` over orientation pairs. Returns the best pair and
/// the objective value there. Restarts whose objective is non-finite are
/// discarded with a warning; if all are discarded, an error is returned.
pub fn optimize_pair<F>(objective: F, cfg: &OptimizerConfig) -> Result<(OrientationPair, f64)>
where
    F: Fn(&OrientationPair) -> f64,
{
    assert!(cfg.restarts >= 1, "need at least one restart");
    let mut best: Option<(OrientationPair, f64)> = None;
    let mut any_finite = false;

    for restart in 0..cfg.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(
            cfg.seed ^ (restart as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
        );
        let chart = Chart {
            base1: random_rotation_with(&mut rng),
            base2: random_rotation_with(&mut rng),
        };
        match descend_from(&objective, chart, cfg) {
            Some((pair, value)) => {
                any_finite = true;
                let better = match &best {
                    None => true,
                    Some((_, v)) => value > *v,
                };
                if better {
                    best = Some((pair, value));
                }
            }
            None => {
                log::warn!("optimizer restart {restart} discarded: non-finite objective");
            }
        }
    }
    if !any_finite {
        return Err(Error::ObjectiveNotFinite);
    }
    Ok(best.expect("at least one finite restart"))
}

/// Nelder-Mead on the negated objective in the rotation-vector chart.
/// Returns None if any evaluation is non-finite.
fn descend_from<F>(
    objective: &F,
    mut chart: Chart,
    cfg: &OptimizerConfig,
) -> Option<(OrientationPair, f64)>
where
    F: Fn(&OrientationPair) -> f64,
{
    const ALPHA: f64 = 1.0; // reflection
    const GAMMA: f64 = 2.0; // expansion
    const RHO: f64 = 0.5; // contraction
    const SIGMA: f64 = 0.5; // shrink
    const INITIAL_STEP: f64 = 0.5;

    let eval = |chart: &Chart, x: &[f64; 6]| -> Option<f64> {
        let v = objective(&chart.pair(x));
        v.is_finite().then_some(-v)
    };

    let mut simplex: Vec<Vertex> = Vec::with_capacity(7);
    let origin = [0.0; 6];
    simplex.push(Vertex {
        f: eval(&chart, &origin)?,
        x: origin,
    });
    for i in 0..6 {
        let mut x = origin;
        x[i] += INITIAL_STEP;
        simplex.push(Vertex {
            f: eval(&chart, &x)?,
            x,
        });
    }

    for _ in 0..cfg.max_iters {
        simplex.sort_by(|a, b| a.f.total_cmp(&b.f));

        // convergence: simplex extent and objective spread
        let best = &simplex[0];
        let worst = &simplex[6];
        let extent = simplex[1..]
            .iter()
            .flat_map(|v| v.x.iter().zip(&best.x).map(|(a, b)| (a - b).abs()))
            .fold(0.0f64, f64::max);
        if extent <= cfg.xtol || (worst.f - best.f).abs() <= cfg.ftol * (best.f.abs() + 1e-300) {
            break;
        }

        // re-center the chart when the best vertex drifts far from it
        let drift = best.x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if drift > std::f64::consts::FRAC_PI_2 {
            let bx = best.x;
            chart.recenter(&bx);
            let step = extent.max(cfg.xtol * 10.0).min(INITIAL_STEP);
            simplex.clear();
            simplex.push(Vertex {
                f: eval(&chart, &origin)?,
                x: origin,
            });
            for i in 0..6 {
                let mut x = origin;
                x[i] += step;
                simplex.push(Vertex {
                    f: eval(&chart, &x)?,
                    x,
                });
            }
            continue;
        }

        // centroid of all but the worst
        let mut centroid = [0.0; 6];
        for v in &simplex[..6] {
            for (c, &xi) in centroid.iter_mut().zip(&v.x) {
                *c += xi / 6.0;
            }
        }
        let worst_x = simplex[6].x;
        let point_along = |t: f64| -> [f64; 6] {
            let mut x = [0.0; 6];
            for i in 0..6 {
                x[i] = centroid[i] + t * (centroid[i] - worst_x[i]);
            }
            x
        };

        let reflected = point_along(ALPHA);
        let f_r = eval(&chart, &reflected)?;
        if f_r < simplex[0].f {
            let expanded = point_along(GAMMA);
            let f_e = eval(&chart, &expanded)?;
            simplex[6] = if f_e < f_r {
                Vertex { x: expanded, f: f_e }
            } else {
                Vertex {
                    x: reflected,
                    f: f_r,
                }
            };
        } else if f_r < simplex[5].f {
            simplex[6] = Vertex {
                x: reflected,
                f: f_r,
            };
        } else {
            // contraction (outside if the reflection improved on the worst)
            let (cx, f_c) = if f_r < simplex[6].f {
                let x = point_along(RHO);
                let f = eval(&chart, &x)?;
                (x, f)
            } else {
                let x = point_along(-RHO);
                let f = eval(&chart, &x)?;
                (x, f)
            };
            if f_c < simplex[6].f.min(f_r) {
                simplex[6] = Vertex { x: cx, f: f_c };
            } else {
                // shrink toward the best vertex
                let best_x = simplex[0].x;
                for v in simplex.iter_mut().skip(1) {
                    for (xi, bi) in v.x.iter_mut().zip(&best_x) {
                        *xi = bi + SIGMA * (*xi - bi);
                    }
                    v.f = eval(&chart, &v.x)?;
                }
            }
        }
    }

    simplex.sort_by(|a, b| a.f.total_cmp(&b.f));
    let pair = chart.pair(&simplex[0].x);
    Some((pair, -simplex[0].f))
}
