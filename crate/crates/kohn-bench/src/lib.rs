//! Fixtures shared by the criterion benches.

use kohn_core::polyring::poly;
use kohn_core::Poly;

pub fn polys(list: &[&str], n: usize) -> Vec<Poly> {
    list.iter().map(|s| poly(s, n)).collect()
}

/// The squares in three variables.
pub fn squares() -> Vec<Poly> {
    polys(&["z1^2", "z2^2", "z3^2"], 3)
}

/// `(z1 z2 z3, z2² − z1², z3² − z1²)`, a zero-dimensional ideal of length 12.
pub fn jacobian_ideal() -> Vec<Poly> {
    polys(&["z1*z2*z3", "z2^2 - z1^2", "z3^2 - z1^2"], 3)
}

/// A cusp with a mixed perturbation.
pub fn cusp() -> Vec<Poly> {
    polys(&["z1^2 + z2^5", "z2^3 + z1*z2^2"], 2)
}
