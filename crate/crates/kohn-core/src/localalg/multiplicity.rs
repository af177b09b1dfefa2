use super::basis::{Caps, StandardBasis};
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::polyring::{Monomial, Poly, RandomSource, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;

/// `dim O/I`, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(m) => Some(m),
            Multiplicity::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Multiplicity::Finite(_))
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Infinite => f.write_str("infinity"),
        }
    }
}

/// Dimension of the quotient by a monomial ideal, counted through the
/// staircase. Infinite unless every variable has a pure power among `lms`.
pub fn staircase_size(lms: &[Monomial], nvars: usize) -> Multiplicity {
    if lms.iter().any(|m| m.is_one()) {
        return Multiplicity::Finite(0);
    }
    let mut pure = vec![u32::MAX; nvars];
    for m in lms {
        if let Some(i) = m.pure_power_var() {
            pure[i] = pure[i].min(m.exp(i));
        }
    }
    if pure.iter().any(|&e| e == u32::MAX) {
        return Multiplicity::Infinite;
    }
    if nvars == 0 {
        return Multiplicity::Finite(1);
    }
    // Walk the box of the first n-1 exponents; along the last axis the
    // standard monomials form an initial segment.
    let last = nvars - 1;
    let mut total = 0u64;
    let mut e = vec![0u32; last];
    loop {
        let mut cut = pure[last];
        for m in lms {
            let ex = m.exponents();
            if ex[..last].iter().zip(&e).all(|(a, b)| a <= b) {
                cut = cut.min(ex[last]);
            }
        }
        total += cut as u64;
        let mut i = 0;
        loop {
            if i == last {
                return Multiplicity::Finite(total);
            }
            e[i] += 1;
            if e[i] < pure[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

/// `dim O/(gens)` in the local ring at the origin.
pub fn local_multiplicity(gens: &[Poly]) -> Result<Multiplicity> {
    local_multiplicity_with(gens, &Caps::default())
}

pub fn local_multiplicity_with(gens: &[Poly], caps: &Caps) -> Result<Multiplicity> {
    let nvars = gens.first().ok_or(Error::Empty("ideal with no generators"))?.nvars();
    let nonzero: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Ok(if nvars == 0 {
            Multiplicity::Finite(1)
        } else {
            Multiplicity::Infinite
        });
    }
    let sb = StandardBasis::complete(&nonzero, MonomialOrder::Local, caps)?;
    Ok(staircase_size(&sb.leading_monomials(), nvars))
}

/// Outcome of a sampled multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledMultiplicity {
    pub value: Multiplicity,
    pub trials: Vec<Multiplicity>,
    /// False when the trials disagreed, a sign of a degenerate draw.
    pub stable: bool,
}

impl SampledMultiplicity {
    fn exact(value: Multiplicity) -> Self {
        SampledMultiplicity {
            value,
            trials: vec![value],
            stable: true,
        }
    }
}

/// Restrict `gens` to the subspace `z = P·(y_1, …, y_{n-d}, 0, …, 0)`; this is
/// the same as adding the `d` linear forms given by the last rows of `P⁻¹`.
pub fn restrict_to_subspace(gens: &[Poly], basis: &[Vec<Rational>], keep: usize) -> Result<Vec<Poly>> {
    let n = basis.len();
    let forms: Vec<Poly> = (0..n)
        .map(|i| {
            let mut p = Poly::zero(keep);
            for (j, c) in basis[i].iter().take(keep).enumerate() {
                if !c.is_zero() {
                    p = &p + &Poly::var(keep, j).expect("in range").scale(c);
                }
            }
            p
        })
        .collect();
    gens.iter().map(|g| g.compose(&forms)).collect()
}

/// `min dim O/(I + (L_1..L_d))` over `trials` random choices of linear forms.
pub fn d_multiplicity(gens: &[Poly], d: usize, rng: &mut RandomSource, trials: usize) -> Result<SampledMultiplicity> {
    d_multiplicity_with(gens, d, rng, trials, &Caps::default())
}

pub fn d_multiplicity_with(
    gens: &[Poly],
    d: usize,
    rng: &mut RandomSource,
    trials: usize,
    caps: &Caps,
) -> Result<SampledMultiplicity> {
    let n = gens.first().ok_or(Error::Empty("ideal with no generators"))?.nvars();
    if d >= n && !(d == 0 && n == 0) {
        return Err(Error::domain(
            "d-multiplicity",
            format!("need d < nvars, got d={d} with {n} variables"),
        ));
    }
    if d == 0 {
        return Ok(SampledMultiplicity::exact(local_multiplicity_with(gens, caps)?));
    }
    let mut values = Vec::with_capacity(trials.max(1));
    for _ in 0..trials.max(1) {
        let p = rng.linear_change(n);
        let restricted = restrict_to_subspace(gens, p.matrix(), n - d)?;
        values.push(local_multiplicity_with(&restricted, caps)?);
    }
    let value = *values.iter().min().unwrap();
    let stable = values.iter().all(|v| *v == value);
    Ok(SampledMultiplicity {
        value,
        trials: values,
        stable,
    })
}

/// Trials used by the tuple wrappers.
pub const DEFAULT_TRIALS: usize = 3;

/// Multiplicity of a k-tuple in n variables: `n-k` generic linear forms added.
pub fn tuple_multiplicity(fs: &[Poly], nvars: usize, rng: &mut RandomSource) -> Result<SampledMultiplicity> {
    tuple_multiplicity_with(fs, nvars, rng, &Caps::default())
}

pub fn tuple_multiplicity_with(
    fs: &[Poly],
    nvars: usize,
    rng: &mut RandomSource,
    caps: &Caps,
) -> Result<SampledMultiplicity> {
    for f in fs {
        if f.nvars() != nvars {
            return Err(Error::Dimension {
                left: nvars,
                right: f.nvars(),
            });
        }
    }
    if fs.is_empty() {
        // n generic linear forms cut out the reduced origin.
        return Ok(SampledMultiplicity::exact(Multiplicity::Finite(1)));
    }
    let d = nvars.saturating_sub(fs.len());
    d_multiplicity_with(fs, d, rng, DEFAULT_TRIALS, caps)
}
