//! Monomials in (x, y, z) and their exact averages over the unit sphere.
//!
//! The closed-form integrals provide an oracle for design verification that
//! is independent of the spherical-harmonic route, and the monomial basis
//! backs the polynomial field type used by the spin module.

/// Exponent triple of x^a y^b z^c.
pub type Exponents = (u32, u32, u32);

/// All monomials of total degree exactly `degree`, in deterministic order.
pub fn of_degree(degree: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    for a in (0..=degree).rev() {
        for b in (0..=(degree - a)).rev() {
            out.push((a, b, degree - a - b));
        }
    }
    out
}

/// All monomials of total degree at most `degree`.
pub fn up_to_degree(degree: u32) -> Vec<Exponents> {
    (0..=degree).flat_map(of_degree).collect()
}

pub fn eval((a, b, c): Exponents, x: f64, y: f64, z: f64) -> f64 {
    x.powi(a as i32) * y.powi(b as i32) * z.powi(c as i32)
}

/// Average of x^a y^b z^c over the unit sphere (normalized measure):
/// zero unless all exponents are even, otherwise
/// (a-1)!! (b-1)!! (c-1)!! / (a+b+c+1)!!.
pub fn sphere_average((a, b, c): Exponents) -> f64 {
    if a % 2 == 1 || b % 2 == 1 || c % 2 == 1 {
        return 0.0;
    }
    // (n-1)!! with (-1)!! = 1
    fn odd_double_factorial(n: u32) -> f64 {
        let mut prod = 1.0;
        let mut i = n as i64 - 1;
        while i >= 1 {
            prod *= i as f64;
            i -= 2;
        }
        prod
    }
    let num = odd_double_factorial(a) * odd_double_factorial(b) * odd_double_factorial(c);
    let mut den = 1.0;
    let mut i = (a + b + c + 1) as i64;
    while i >= 1 {
        den *= i as f64;
        i -= 2;
    }
    num / den
}
