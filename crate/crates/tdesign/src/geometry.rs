//! Vectors, rotations, and rigid bodies built from point sets.

use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dd::{Dd, DdVec3};
use crate::error::{Error, Result};

/// 3-vector in meters (dimensionless when on the unit sphere).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Vec3 {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3 {
            x: self.y * o.z - self.z * o.y,
            y: self.z * o.x - self.x * o.z,
            z: self.x * o.y - self.y * o.x,
        }
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(self) -> Vec3 {
        let n = self.norm();
        Vec3 {
            x: self.x / n,
            y: self.y / n,
            z: self.z / n,
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Some unit vector perpendicular to `self` (must be nonzero).
    pub fn any_perpendicular(self) -> Vec3 {
        let axis = if self.x.abs() < 0.9 * self.norm() {
            Vec3::new(1.0, 0.0, 0.0)
        } else {
            Vec3::new(0.0, 1.0, 0.0)
        };
        self.cross(axis).normalized()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Orientation of a rigid body: a unit quaternion, scalar-first.
///
/// `q` and `-q` act identically on vectors; construction canonicalizes the
/// sign so that equal rotations compare equal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Rotation {
    pub const IDENTITY: Rotation = Rotation {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    /// Normalizes and canonicalizes the double cover (scalar part >= 0;
    /// on the w = 0 great circle, first nonzero component positive).
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Rotation {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        assert!(n > 0.0 && n.is_finite(), "degenerate quaternion");
        let (mut w, mut x, mut y, mut z) = (w / n, x / n, y / n, z / n);
        let flip = if w != 0.0 {
            w < 0.0
        } else if x != 0.0 {
            x < 0.0
        } else if y != 0.0 {
            y < 0.0
        } else {
            z < 0.0
        };
        if flip {
            w = -w;
            x = -x;
            y = -y;
            z = -z;
        }
        Rotation { w, x, y, z }
    }

    /// Rotation by `angle` radians about `axis`.
    pub fn from_axis_angle(axis: Vec3, angle: f64) -> Rotation {
        let u = axis.normalized();
        let (s, c) = (angle / 2.0).sin_cos();
        Rotation::new(c, u.x * s, u.y * s, u.z * s)
    }

    /// Exponential map of a rotation vector (axis * angle).
    pub fn from_rotation_vector(v: Vec3) -> Rotation {
        let angle = v.norm();
        if angle < 1e-300 {
            return Rotation::IDENTITY;
        }
        Rotation::from_axis_angle(v, angle)
    }

    /// Composition: `self * other` applies `other` first, then `self`.
    pub fn compose(self, o: Rotation) -> Rotation {
        Rotation::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }

    pub fn inverse(self) -> Rotation {
        Rotation::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Geodesic angle to another rotation, in [0, π].
    pub fn angle_to(self, o: Rotation) -> f64 {
        let dot =
            (self.w * o.w + self.x * o.x + self.y * o.y + self.z * o.z).abs();
        2.0 * dot.min(1.0).acos()
    }

    /// Applies the rotation to a vector.
    pub fn apply(self, p: Vec3) -> Vec3 {
        // v' = v + 2w (u × v) + 2 u × (u × v)
        let u = Vec3::new(self.x, self.y, self.z);
        let t = u.cross(p) * 2.0;
        p + t * self.w + u.cross(t)
    }

    /// Applies the rotation in double-double arithmetic.
    ///
    /// Within a sum of rotated-point contributions the f64 rounding of each
    /// rotated coordinate does not cancel, so kernels that rely on exact
    /// design cancellations rotate through this path.
    pub fn apply_dd(self, p: Vec3) -> DdVec3 {
        let px = Dd::from_f64(p.x);
        let py = Dd::from_f64(p.y);
        let pz = Dd::from_f64(p.z);
        let (ux, uy, uz) = (self.x, self.y, self.z);
        // t = 2 u × p
        let tx = (Dd::from_f64(uy) * pz.to_f64() - Dd::from_f64(uz) * py.to_f64()) * 2.0;
        let ty = (Dd::from_f64(uz) * px.to_f64() - Dd::from_f64(ux) * pz.to_f64()) * 2.0;
        let tz = (Dd::from_f64(ux) * py.to_f64() - Dd::from_f64(uy) * px.to_f64()) * 2.0;
        // v' = p + w t + u × t
        DdVec3 {
            x: px + tx * self.w + (ty * uz - tz * uy) * -1.0,
            y: py + ty * self.w + (tz * ux - tx * uz) * -1.0,
            z: pz + tz * self.w + (tx * uy - ty * ux) * -1.0,
        }
    }
}

/// Rotates a vector. Free-function form of [`Rotation::apply`].
pub fn rotate(r: Rotation, p: Vec3) -> Vec3 {
    r.apply(p)
}

/// Haar-uniform random rotation: four standard normals, normalized.
/// Deterministic for a given seed.
pub fn random_rotation(seed: u64) -> Rotation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_rotation_with(&mut rng)
}

/// Haar-uniform random rotation from a caller-managed RNG.
pub fn random_rotation_with<R: Rng>(rng: &mut R) -> Rotation {
    loop {
        let w: f64 = rng.sample(StandardNormal);
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        let n2 = w * w + x * x + y * y + z * z;
        if n2 > 1e-12 {
            return Rotation::new(w, x, y, z);
        }
    }
}

/// Whether the body carries charge (coulombs) or mass (kilograms).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Charge,
    Mass,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kind::Charge => write!(f, "charge"),
            Kind::Mass => write!(f, "mass"),
        }
    }
}

/// A weighted point element of a rigid body.
#[derive(Debug, Clone, Copy)]
pub struct Element {
    pub position: Vec3,
    pub weight: f64,
}

/// A uniform sphere attached to a mass body. Interacts with exterior
/// points as a point mass at its center (shell theorem); the radius is kept
/// for overlap checks.
#[derive(Debug, Clone, Copy)]
pub struct Sphere {
    pub center: Vec3,
    pub radius: f64,
    pub mass: f64,
}

/// Rigid collection of weighted points, plus optional uniform spheres for
/// mass bodies. Immutable after construction.
#[derive(Debug, Clone)]
pub struct RigidBody {
    pub elements: Vec<Element>,
    pub kind: Kind,
    pub spheres: Vec<Sphere>,
}

impl RigidBody {
    pub fn new(elements: Vec<Element>, kind: Kind) -> RigidBody {
        assert!(
            elements.iter().all(|e| e.position.is_finite() && e.weight.is_finite()),
            "non-finite element"
        );
        RigidBody {
            elements,
            kind,
            spheres: Vec::new(),
        }
    }

    pub fn total_weight(&self) -> f64 {
        self.elements.iter().map(|e| e.weight).sum()
    }

    /// Largest element distance from the origin.
    pub fn radius(&self) -> f64 {
        self.elements
            .iter()
            .map(|e| e.position.norm())
            .fold(0.0, f64::max)
    }

    /// Returns the body with every element (and sphere center) rotated.
    pub fn rotated(&self, r: Rotation) -> RigidBody {
        RigidBody {
            elements: self
                .elements
                .iter()
                .map(|e| Element {
                    position: r.apply(e.position),
                    weight: e.weight,
                })
                .collect(),
            kind: self.kind,
            spheres: self
                .spheres
                .iter()
                .map(|s| Sphere {
                    center: r.apply(s.center),
                    radius: s.radius,
                    mass: s.mass,
                })
                .collect(),
        }
    }

    /// Direction of the largest second moment of the weight distribution
    /// (principal axis of Σ w p pᵀ). Used for the documented default
    /// orientation pair.
    pub fn principal_axis(&self) -> Vec3 {
        let mut m = [[0.0f64; 3]; 3];
        for e in &self.elements {
            let p = [e.position.x, e.position.y, e.position.z];
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] += e.weight.abs() * p[i] * p[j];
                }
            }
        }
        let (_, axis) = largest_eigenpair_sym3(&m);
        axis
    }
}

/// Largest eigenvalue/vector of a symmetric 3x3 matrix by power iteration
/// with fixed cycle-free start handling.
fn largest_eigenpair_sym3(m: &[[f64; 3]; 3]) -> (f64, Vec3) {
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |a, &b| a.max(b.abs()));
    if scale == 0.0 {
        return (0.0, Vec3::new(0.0, 0.0, 1.0));
    }
    // Deterministic starts; two suffice to avoid an orthogonal start.
    let starts = [Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.577, 0.577, 0.578)];
    let mut best = (0.0f64, Vec3::new(0.0, 0.0, 1.0));
    for &s in &starts {
        let mut v = s.normalized();
        for _ in 0..200 {
            let w = Vec3::new(
                m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
            );
            if w.norm() < 1e-300 {
                break;
            }
            v = w.normalized();
        }
        let lambda = Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
        .dot(v);
        if lambda.abs() >= best.0.abs() {
            best = (lambda, v);
        }
    }
    best
}

/// Places one element of weight `unit_weight` at `radius` times each design
/// point.
pub fn build_body(
    points: &[Vec3],
    radius: f64,
    unit_weight: f64,
    kind: Kind,
) -> Result<RigidBody> {
    if radius <= 0.0 || radius.is_nan() {
        return Err(Error::NonPositiveRadius(radius));
    }
    let elements = points
        .iter()
        .map(|&p| Element {
            position: p * radius,
            weight: unit_weight,
        })
        .collect();
    Ok(RigidBody::new(elements, kind))
}

/// Central sphere parameters for [`attach_spheres`].
#[derive(Debug, Clone, Copy)]
pub struct CentralSphere {
    pub radius: f64,
    pub mass: f64,
}

/// Uniform-sphere mass of radius `r` at density `rho`.
pub fn sphere_mass(radius: f64, density: f64) -> f64 {
    4.0 / 3.0 * std::f64::consts::PI * radius.powi(3) * density
}

/// Radius of a uniform sphere of mass `m` at density `rho`.
pub fn sphere_radius(mass: f64, density: f64) -> f64 {
    (mass / (4.0 / 3.0 * std::f64::consts::PI * density)).cbrt()
}

/// Replaces each point element by a uniform peripheral sphere tangent to a
/// central sphere at the origin.
///
/// Peripheral centers sit at distance `central.radius + r_p` along each
/// element's direction, where `r_p` follows from `peripheral_mass_each` and
/// `density`. Element weights are replaced by the sphere masses (shell
/// theorem point equivalence). `mass_budget`, when given, bounds the total.
pub fn attach_spheres(
    body: &RigidBody,
    central: CentralSphere,
    peripheral_mass_each: f64,
    density: f64,
    mass_budget: Option<f64>,
) -> Result<RigidBody> {
    if body.kind != Kind::Mass {
        return Err(Error::SpheresOnChargeBody);
    }
    if peripheral_mass_each <= 0.0 || peripheral_mass_each.is_nan() {
        return Err(Error::NonPositiveMass(peripheral_mass_each));
    }
    if central.mass < 0.0 {
        return Err(Error::NonPositiveMass(central.mass));
    }
    if central.radius <= 0.0 || central.radius.is_nan() {
        return Err(Error::NonPositiveRadius(central.radius));
    }
    if density <= 0.0 || density.is_nan() {
        return Err(Error::DensityNotSet(density));
    }
    let n = body.elements.len();
    let total = central.mass + peripheral_mass_each * n as f64;
    if let Some(budget) = mass_budget {
        if total > budget * (1.0 + 1e-12) {
            return Err(Error::MassBudgetExceeded { total, budget });
        }
    }
    let r_p = sphere_radius(peripheral_mass_each, density);
    let offset = central.radius + r_p;

    let mut elements = Vec::with_capacity(n + 1);
    let mut spheres = Vec::with_capacity(n + 1);
    elements.push(Element {
        position: Vec3::ZERO,
        weight: central.mass,
    });
    spheres.push(Sphere {
        center: Vec3::ZERO,
        radius: central.radius,
        mass: central.mass,
    });
    for e in &body.elements {
        let c = e.position.normalized() * offset;
        elements.push(Element {
            position: c,
            weight: peripheral_mass_each,
        });
        spheres.push(Sphere {
            center: c,
            radius: r_p,
            mass: peripheral_mass_each,
        });
    }
    Ok(RigidBody {
        elements,
        kind: Kind::Mass,
        spheres,
    })
}
