use super::basis::{Caps, StandardBasis};
use super::order::MonomialOrder;
use crate::error::Result;
use crate::polyring::Poly;

/// Generators of `(gens) ∩ C[z_keep_from, …, z_n]`, still written in all
/// variables, via a reduced basis under the block order that eliminates the
/// first `keep_from` variables.
pub fn elimination_ideal(gens: &[Poly], keep_from: usize) -> Result<Vec<Poly>> {
    elimination_ideal_with(gens, keep_from, &Caps::default())
}

pub fn elimination_ideal_with(gens: &[Poly], keep_from: usize, caps: &Caps) -> Result<Vec<Poly>> {
    let sb = StandardBasis::complete(gens, MonomialOrder::Block(keep_from), caps)?;
    Ok(sb
        .generators()
        .iter()
        .filter(|g| g.support_vars().iter().all(|&v| v >= keep_from))
        .cloned()
        .collect())
}
