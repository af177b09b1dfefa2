//! Standard bases in the local ring at the origin (and for global orders),
//! multiplicities, elimination and bounded radical membership.

mod basis;
mod certificate;
mod certify;
mod elimination;
mod macaulay;
mod multiplicity;
mod order;
mod radical;
mod siu;
mod sorted;

use crate::error::Result;
use crate::polyring::Poly;

pub use basis::{complete_basis, BasisJson, Caps, StandardBasis};
pub use certificate::{Filtration, MembershipCertificate};
pub use certify::LocalCertifier;
pub use elimination::{elimination_ideal, elimination_ideal_with};
pub use macaulay::{macaulay_multiplicity, truncated_quotient_dim};
pub use multiplicity::{
    d_multiplicity, d_multiplicity_with, local_multiplicity, local_multiplicity_with, restrict_to_subspace,
    staircase_size, tuple_multiplicity, tuple_multiplicity_with, Multiplicity, SampledMultiplicity, DEFAULT_TRIALS,
};
pub use order::MonomialOrder;
pub use radical::{
    exponent_bound, minimal_power, radical_membership_in, radical_membership_power,
    radical_membership_power_with, RootOrder,
};
pub use siu::{siu_select, siu_select_with, siu_select_with_bound, SiuSelection};

/// `mora_normal_form(p, basis)`: remainder with `(unit, cofactors)` such that
/// `unit·p = Σ cofactors_i·input_i + remainder`.
pub fn mora_normal_form(p: &Poly, basis: &StandardBasis) -> Result<(Poly, Poly, Vec<Poly>)> {
    basis.normal_form_with_certificate(p, &Caps::default())
}
