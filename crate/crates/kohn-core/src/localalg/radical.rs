use super::basis::{Caps, StandardBasis};
use super::certificate::MembershipCertificate;
use super::certify::LocalCertifier;
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::polyring::Poly;
use serde::{Deserialize, Serialize};

/// Minimal `r` with `g^r` in the local ideal, with its certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootOrder {
    pub r: u32,
    pub certificate: MembershipCertificate,
}

/// Largest exponent tried: `n·mu` (never below 1).
pub fn exponent_bound(nvars: usize, mu: u64) -> u64 {
    (nvars as u64).saturating_mul(mu).max(1)
}

/// Smallest `r ≤ bound` with `g^r ∈ I·O`, found by `h_{r+1} = NF(g·h_r)`;
/// `h_r` differs from `g^r` by a unit modulo `I`, so it vanishes exactly
/// when `g^r` is a member.
pub fn minimal_power(g: &Poly, sb: &StandardBasis, bound: u64, caps: &Caps) -> Result<Option<u32>> {
    let mut h = Poly::one(g.nvars());
    for r in 1..=bound {
        h = sb.normal_form(&g.checked_mul(&h)?, caps)?;
        if h.is_zero() {
            return Ok(Some(r as u32));
        }
    }
    Ok(None)
}

/// Minimal `r ≤ n·mu` with `g^r ∈ (gens)` in the local ring, with
/// certificate. `None` is certified non-membership at the bound, hence
/// `g ∉ √(gens)` when `mu` is the multiplicity of `gens`.
pub fn radical_membership_power(g: &Poly, gens: &[Poly], mu: u64) -> Result<Option<RootOrder>> {
    radical_membership_power_with(g, gens, mu, &Caps::default())
}

pub fn radical_membership_power_with(g: &Poly, gens: &[Poly], mu: u64, caps: &Caps) -> Result<Option<RootOrder>> {
    // The search runs on a truncated basis; only the certificate needs lifts.
    let fast = StandardBasis::complete(gens, MonomialOrder::Local, caps)?;
    let bound = exponent_bound(fast.nvars(), mu);
    let Some(r) = minimal_power(g, &fast, bound, caps)? else {
        return Ok(None);
    };
    let certificate = LocalCertifier::new(gens, caps)?.certify(&g.pow(r))?;
    Ok(Some(RootOrder { r, certificate }))
}

/// Same search with a prebuilt decision basis and certifier for the ideal.
pub fn radical_membership_in(
    g: &Poly,
    sb: &StandardBasis,
    certifier: &LocalCertifier,
    mu: u64,
    caps: &Caps,
) -> Result<Option<RootOrder>> {
    if g.nvars() != sb.nvars() {
        return Err(Error::Dimension {
            left: sb.nvars(),
            right: g.nvars(),
        });
    }
    let bound = exponent_bound(sb.nvars(), mu);
    let Some(r) = minimal_power(g, sb, bound, caps)? else {
        return Ok(None);
    };
    let certificate = certifier.certify(&g.pow(r))?;
    Ok(Some(RootOrder { r, certificate }))
}
