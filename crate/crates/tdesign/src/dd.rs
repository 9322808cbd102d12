//! Double-double arithmetic: an unevaluated sum of two `f64` giving ~31
//! significant digits.
//!
//! Phase-rate computations subtract potential energies that agree to many
//! more digits than `f64` carries (the whole point of a high-order design is
//! that the difference is tiny), so the energy-difference kernel accumulates
//! in this representation. Components are the classical error-free
//! transformations: Knuth two-sum, FMA-based two-product, Karp–Markstein
//! style division.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Requires |a| >= |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = a.mul_add(b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn sqrt(self) -> Dd {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        // One Newton step on y = sqrt(hi) doubles the working precision.
        let y = self.hi.sqrt();
        let y_dd = Dd::from_f64(y);
        (y_dd + self / y_dd) * 0.5
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (sh, sl) = two_sum(self.hi, rhs.hi);
        let (th, tl) = two_sum(self.lo, rhs.lo);
        let c = sl + th;
        let (vh, vl) = quick_two_sum(sh, c);
        let w = tl + vl;
        let (hi, lo) = quick_two_sum(vh, w);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (ph, pl) = two_prod(self.hi, rhs.hi);
        let pl = pl + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(ph, pl);
        Dd { hi, lo }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: f64) -> Dd {
        let (ph, pl) = two_prod(self.hi, rhs);
        let pl = pl + self.lo * rhs;
        let (hi, lo) = quick_two_sum(ph, pl);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    #[inline]
    fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * q1;
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * q2;
        let q3 = r.hi / rhs.hi;
        let (sh, sl) = quick_two_sum(q1, q2);
        Dd { hi: sh, lo: sl } + Dd::from_f64(q3)
    }
}

/// 3-vector with double-double components, for exact-geometry kernels.
#[derive(Debug, Clone, Copy)]
pub struct DdVec3 {
    pub x: Dd,
    pub y: Dd,
    pub z: Dd,
}

impl Sub for DdVec3 {
    type Output = DdVec3;
    #[inline]
    fn sub(self, o: DdVec3) -> DdVec3 {
        DdVec3 {
            x: self.x - o.x,
            y: self.y - o.y,
            z: self.z - o.z,
        }
    }
}

impl DdVec3 {
    #[inline]
    pub fn from_f64(x: f64, y: f64, z: f64) -> DdVec3 {
        DdVec3 {
            x: Dd::from_f64(x),
            y: Dd::from_f64(y),
            z: Dd::from_f64(z),
        }
    }

    #[inline]
    pub fn dot(self, o: DdVec3) -> Dd {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn norm(self) -> Dd {
        self.dot(self).sqrt()
    }
}
