use crate::error::{Error, Result};
use crate::localalg::{local_multiplicity_with, tuple_multiplicity_with, Caps};
use crate::polyring::{jacobian_det, linear_combination, LinearChange, Poly, RandomSource, Rational};
use num_traits::{One, Zero};
use serde::Serialize;

const PROC: &str = "MP1 partial Jacobian";
pub(crate) const MAX_DRAWS: usize = 8;

/// Outcome of MP1: the map `Γ = (ℓ_1, …, ℓ_k, ψ'_{k+1}, …, ψ'_n)` whose
/// first `k` components are the new coordinates `ℓ = L·z` and whose tail is
/// the mix `ψ' = T·ψ`, with `J = det DΓ` and its certified multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialJacobian {
    #[serde(skip)]
    pub change: LinearChange,
    #[serde(skip)]
    pub mix: Vec<Vec<Rational>>,
    pub psi: Vec<Poly>,
    pub gamma: Vec<Poly>,
    pub jacobian: Poly,
    /// `ν = mult f` and `μ = mult(f, ψ)`.
    pub mult_f: u64,
    pub mult_f_psi: u64,
    /// `mult(f, J)` against `d·ν·μ`.
    pub mult_fj: Option<u64>,
    pub bound_fj: u64,
    /// `mult(f, J, ψ'_{k+2}, …, ψ'_n)` against `d·ν·μ^d`.
    pub mult_fj_psi: Option<u64>,
    pub bound_fj_psi: u64,
    pub certified: bool,
    pub draws: usize,
}

fn finite_mult(fs: &[Poly], n: usize, what: &str, rng: &mut RandomSource, caps: &Caps) -> Result<u64> {
    tuple_multiplicity_with(fs, n, rng, caps)?
        .value
        .finite()
        .ok_or_else(|| Error::domain(PROC, format!("{what} has infinite multiplicity")))
}

fn sat_mul(a: u64, b: u64) -> u64 {
    a.saturating_mul(b)
}

/// Random coordinates and mixing until both multiplicity bounds certify.
pub fn mp1_select_partial_jacobian(
    f: &[Poly],
    psi: &[Poly],
    rng: &mut RandomSource,
    caps: &Caps,
) -> Result<PartialJacobian> {
    let (n, k, d) = shape(f, psi)?;
    let nu = finite_mult(f, n, "f", rng, caps)?;
    let mut all = f.to_vec();
    all.extend(psi.iter().cloned());
    let mu = finite_mult(&all, n, "(f, ψ)", rng, caps)?;
    for draw in 1..=MAX_DRAWS {
        let change = if k == 0 { LinearChange::identity(n) } else { rng.linear_change(n) };
        let mix = if d == 1 {
            vec![vec![Rational::one()]]
        } else {
            rng.linear_change(d).matrix().to_vec()
        };
        let mut sel = certify(f, psi, change, mix, nu, mu, rng, caps)?;
        sel.draws = draw;
        if sel.certified {
            return Ok(sel);
        }
    }
    Err(Error::resource(PROC, "draws without a certified partial Jacobian", MAX_DRAWS as u64))
}

/// MP1 with the coordinate change and the mix given; `certified` reports
/// whether both bounds hold.
pub fn mp1_with_change(
    f: &[Poly],
    psi: &[Poly],
    change: LinearChange,
    mix: Vec<Vec<Rational>>,
    rng: &mut RandomSource,
    caps: &Caps,
) -> Result<PartialJacobian> {
    let (n, _, _) = shape(f, psi)?;
    let nu = finite_mult(f, n, "f", rng, caps)?;
    let mut all = f.to_vec();
    all.extend(psi.iter().cloned());
    let mu = finite_mult(&all, n, "(f, ψ)", rng, caps)?;
    certify(f, psi, change, mix, nu, mu, rng, caps)
}

fn shape(f: &[Poly], psi: &[Poly]) -> Result<(usize, usize, usize)> {
    let n = psi.first().ok_or(Error::Empty("MP1 needs at least one pre-multiplier"))?.nvars();
    let (k, d) = (f.len(), psi.len());
    if k + d != n {
        return Err(Error::Count { expected: n - k.min(n), got: d });
    }
    if let Some(p) = f.iter().chain(psi).find(|p| p.nvars() != n) {
        return Err(Error::Dimension {
            left: n,
            right: p.nvars(),
        });
    }
    Ok((n, k, d))
}

#[allow(clippy::too_many_arguments)]
fn certify(
    f: &[Poly],
    psi: &[Poly],
    change: LinearChange,
    mix: Vec<Vec<Rational>>,
    nu: u64,
    mu: u64,
    rng: &mut RandomSource,
    caps: &Caps,
) -> Result<PartialJacobian> {
    let (n, k, d) = (change.dim(), f.len(), psi.len());
    if mix.len() != d || mix.iter().any(|r| r.len() != d) {
        return Err(Error::domain(PROC, format!("mix must be {d}×{d}")));
    }
    if change.dim() != psi[0].nvars() {
        return Err(Error::Dimension {
            left: psi[0].nvars(),
            right: change.dim(),
        });
    }
    if crate::polyring::rational_det(&mix).is_zero() {
        return Err(Error::Singular);
    }
    let mixed: Vec<Poly> = mix.iter().map(|row| linear_combination(psi, row)).collect::<Result<_>>()?;
    let mut gamma: Vec<Poly> = change.forms().into_iter().take(k).collect();
    gamma.extend(mixed.iter().cloned());
    let vars: Vec<usize> = (0..n).collect();
    let jacobian = jacobian_det(&gamma, &vars)?;

    let du = d as u64;
    let bound_fj = sat_mul(sat_mul(du, nu), mu);
    let bound_fj_psi = sat_mul(sat_mul(du, nu), mu.saturating_pow(d as u32));
    let mut fj = f.to_vec();
    fj.push(jacobian.clone());
    let mult_fj = tuple_multiplicity_with(&fj, n, rng, caps)?.value.finite();
    let mut full = fj;
    full.extend(mixed[1..].iter().cloned());
    let mult_fj_psi = local_multiplicity_with(&full, caps)?.finite();
    let certified = mult_fj.is_some_and(|m| m <= bound_fj) && mult_fj_psi.is_some_and(|m| m <= bound_fj_psi);
    Ok(PartialJacobian {
        change,
        mix,
        psi: mixed,
        gamma,
        jacobian,
        mult_f: nu,
        mult_f_psi: mu,
        mult_fj,
        bound_fj,
        mult_fj_psi,
        bound_fj_psi,
        certified,
        draws: 1,
    })
}
