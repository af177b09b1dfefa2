//! Exact multivariate polynomials over Q.
//!
//! Variables are indexed from 0 in the API and printed from 1 (`z1`, `z2`, …).

mod json;
mod linear;
mod monomial;
mod poly;
mod random;
mod text;

pub use json::{rational_from_str, rational_string, rational_to_string};
pub use linear::{apply_linear_change, jacobian_det, poly_det, rational_det, rational_inverse, resultant, LinearChange};
pub use monomial::Monomial;
pub use poly::{rat, ratio, Poly, Rational};
pub use random::{
    linear_combination, random_linear_combinations, random_linear_combinations_with_coeffs,
    RandomSource, DEFAULT_COEFF_BOUND,
};
pub use text::{parse_poly, parse_poly_list};

/// `p(g_1, …, g_m)`
pub fn compose(p: &Poly, gs: &[Poly]) -> crate::error::Result<Poly> {
    p.compose(gs)
}

/// `z^α` helper used throughout tests and drivers.
pub fn poly(s: &str, nvars: usize) -> Poly {
    parse_poly(s, Some(nvars)).unwrap_or_else(|e| panic!("bad polynomial literal {s:?}: {e}"))
}
