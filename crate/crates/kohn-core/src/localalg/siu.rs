use super::basis::Caps;
use super::multiplicity::{tuple_multiplicity_with, Multiplicity};
use crate::error::{Error, Result};
use crate::polyring::{random_linear_combinations, Poly, RandomSource};

const PROC: &str = "siu selection";
const MAX_DRAWS: usize = 8;

/// Random combinations `G` of `big_f` whose joint multiplicity with `f` is
/// re-checked against `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiuSelection {
    pub combinations: Vec<Poly>,
    pub multiplicity: Multiplicity,
    pub bound: u64,
}

/// `count` combinations of `big_f` with `mult(f, G) ≤ mult(f)·mult(F)^count`.
pub fn siu_select(f: &[Poly], big_f: &[Poly], count: usize, rng: &mut RandomSource) -> Result<Vec<Poly>> {
    Ok(siu_select_with(f, big_f, count, rng, &Caps::default())?.combinations)
}

pub fn siu_select_with(
    f: &[Poly],
    big_f: &[Poly],
    count: usize,
    rng: &mut RandomSource,
    caps: &Caps,
) -> Result<SiuSelection> {
    let nvars = f
        .first()
        .or(big_f.first())
        .ok_or(Error::Empty("siu selection without polynomials"))?
        .nvars();
    let mu = tuple_multiplicity_with(f, nvars, rng, caps)?.value;
    if count == 0 {
        return Ok(SiuSelection {
            combinations: Vec::new(),
            multiplicity: mu,
            bound: mu.finite().unwrap_or(u64::MAX),
        });
    }
    let nu = tuple_multiplicity_with(big_f, nvars, rng, caps)?.value;
    let (Some(mu), Some(nu)) = (mu.finite(), nu.finite()) else {
        return Err(Error::domain(PROC, "multiplicities must be finite"));
    };
    let bound = (nu as u128)
        .checked_pow(count as u32)
        .and_then(|p| p.checked_mul(mu as u128))
        .map(|b| b.min(u64::MAX as u128) as u64)
        .unwrap_or(u64::MAX);
    siu_select_with_bound(f, big_f, count, bound, rng, caps)
}

/// Draw until the joint multiplicity certifies `≤ bound`.
pub fn siu_select_with_bound(
    f: &[Poly],
    big_f: &[Poly],
    count: usize,
    bound: u64,
    rng: &mut RandomSource,
    caps: &Caps,
) -> Result<SiuSelection> {
    let nvars = f
        .first()
        .or(big_f.first())
        .ok_or(Error::Empty("siu selection without polynomials"))?
        .nvars();
    if f.len() + count > nvars {
        return Err(Error::domain(PROC, "more polynomials than variables"));
    }
    for _ in 0..MAX_DRAWS {
        let g = random_linear_combinations(big_f, count, rng)?;
        let mut all = f.to_vec();
        all.extend(g.iter().cloned());
        let m = tuple_multiplicity_with(&all, nvars, rng, caps)?.value;
        if m.finite().is_some_and(|m| m <= bound) {
            return Ok(SiuSelection {
                combinations: g,
                multiplicity: m,
                bound,
            });
        }
    }
    Err(Error::resource(PROC, "random draws without a certified bound", MAX_DRAWS as u64))
}
