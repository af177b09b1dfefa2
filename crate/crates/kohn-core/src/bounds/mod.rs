//! Exact evaluation of the effectiveness bounds: `ε(n,ν)`, the `μ_k` and
//! `ε_k` recursions, their closed-form estimates, and the comparison of an
//! achieved order against the worst case.
//!
//! Everything is a [`PowerProduct`] or a [`BoundValue`], so even values with
//! far more than a million digits compare exactly.

mod power;
mod value;

pub use power::{log2_interval, power_of, Interval, PowerProduct};
pub use value::{describe, BoundValue, DIGIT_CAP};

use crate::polyring::Rational;
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::Pow;
use serde::Serialize;
use std::cmp::Ordering;

fn check(n: u64, nu: u64) -> Result<()> {
    if n == 0 || nu == 0 {
        return Err(Error::domain("bounds", format!("need n ≥ 1 and ν ≥ 1, got n={n}, ν={nu}")));
    }
    Ok(())
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

/// `(n·ν)^((3n)^e)` as a power product.
fn n_nu_tower(n: u64, nu: u64, e: u32) -> PowerProduct {
    let top = Pow::pow(BigUint::from(3 * n), e);
    PowerProduct::from_u64(n)
        .mul(&PowerProduct::from_u64(nu))
        .pow(&BigInt::from(top))
}

/// `ε(n,ν) = 1 / (4·(2n+2)^(2(nν)^((3n)^(n+1))))`.
pub fn epsilon_bound(n: u64, nu: u64) -> Result<BoundValue> {
    check(n, nu)?;
    let e = n_nu_tower(n, nu, n as u32 + 1).mul(&PowerProduct::from_u64(2));
    Ok(BoundValue::inverse_power(PowerProduct::ratio(1, 4), 2 * n + 2, e))
}

/// `ε(n, t^n)`: the bound in terms of the type `t`, using `ν ≤ t^n`.
pub fn epsilon_bound_from_type(n: u64, t: u64) -> Result<BoundValue> {
    let nu = u32::try_from(n)
        .ok()
        .and_then(|e| t.checked_pow(e))
        .ok_or_else(|| Error::domain("bounds", format!("t^n overflows for t={t}, n={n}")))?;
    epsilon_bound(n, nu)
}

/// `μ_0..μ_n` from `μ_0 = 1`, `μ_{k+1} = n^(k+3) ν^((n-k)(n+1)) μ_k^(n+k+3)`.
pub fn mu_sequence(n: u64, nu: u64) -> Result<Vec<PowerProduct>> {
    check(n, nu)?;
    let (pn, pnu) = (PowerProduct::from_u64(n), PowerProduct::from_u64(nu));
    let mut out = vec![PowerProduct::one()];
    for k in 0..n {
        let prev = out.last().unwrap();
        let next = pn
            .pow(&big(k + 3))
            .mul(&pnu.pow(&big((n - k) * (n + 1))))
            .mul(&prev.pow(&big(n + k + 3)));
        out.push(next);
    }
    Ok(out)
}

pub fn mu_recursion(n: u64, nu: u64, k: u64) -> Result<PowerProduct> {
    if k > n {
        return Err(Error::domain("bounds", format!("need k ≤ n, got k={k}, n={n}")));
    }
    Ok(mu_sequence(n, nu)?.swap_remove(k as usize))
}

/// `n^((3n)^k) ν^((3n)^(k+1))`, the closed-form ceiling for `μ_k`.
pub fn mu_closed_form(n: u64, nu: u64, k: u32) -> PowerProduct {
    let t = |e: u32| BigInt::from(Pow::pow(BigUint::from(3 * n), e));
    PowerProduct::from_u64(n)
        .pow(&t(k))
        .mul(&PowerProduct::from_u64(nu).pow(&t(k + 1)))
}

/// `ε_0..ε_n` from `ε_0 = 1/2`, `ε_{k+1} = ε_k / (2k+2)^((n μ_k² ν^(n-k))^k)`.
pub fn epsilon_sequence(n: u64, nu: u64) -> Result<Vec<BoundValue>> {
    let mus = mu_sequence(n, nu)?;
    let (pn, pnu) = (PowerProduct::from_u64(n), PowerProduct::from_u64(nu));
    let mut out = vec![BoundValue::exact(PowerProduct::ratio(1, 2))];
    for k in 0..n {
        let base = pn.mul(&mus[k as usize].pow(&big(2))).mul(&pnu.pow(&big(n - k)));
        let step = BoundValue::inverse_power(PowerProduct::one(), 2 * k + 2, base.pow(&big(k)));
        let next = out.last().unwrap().mul(&step);
        out.push(next);
    }
    Ok(out)
}

pub fn epsilon_recursion(n: u64, nu: u64, k: u64) -> Result<BoundValue> {
    if k > n {
        return Err(Error::domain("bounds", format!("need k ≤ n, got k={k}, n={n}")));
    }
    Ok(epsilon_sequence(n, nu)?.swap_remove(k as usize))
}

/// `1 / (2·(2n+2)^((nν)^((3n)^(n+1))))`, the closed-form floor for `ε_n`.
pub fn epsilon_final_floor(n: u64, nu: u64) -> Result<BoundValue> {
    check(n, nu)?;
    Ok(BoundValue::inverse_power(
        PowerProduct::ratio(1, 2),
        2 * n + 2,
        n_nu_tower(n, nu, n as u32 + 1),
    ))
}

fn decided(o: Option<Ordering>, what: &str) -> Result<Ordering> {
    o.ok_or_else(|| Error::resource("bounds", format!("cannot decide {what} within the digit cap"), DIGIT_CAP))
}

/// `μ_k ≤ n^((3n)^k) ν^((3n)^(k+1))` for every `k ≤ n`.
pub fn check_mu_closed_form(n: u64, nu: u64) -> Result<bool> {
    let mus = mu_sequence(n, nu)?;
    for (k, mu) in mus.iter().enumerate() {
        let cf = mu_closed_form(n, nu, k as u32);
        if decided(mu.cmp_exact(&cf, DIGIT_CAP), "μ_k against its closed form")? == Ordering::Greater {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ε_n ≥ 1/(2(2n+2)^((nν)^((3n)^(n+1))))` and `ε_n / (2μ_n) ≥ ε(n,ν)`.
pub fn check_epsilon_final(n: u64, nu: u64) -> Result<bool> {
    let eps_n = epsilon_sequence(n, nu)?.pop().unwrap();
    let mu_n = mu_sequence(n, nu)?.pop().unwrap();
    let floor = epsilon_final_floor(n, nu)?;
    if decided(eps_n.compare(&floor, DIGIT_CAP), "ε_n against its floor")? == Ordering::Less {
        return Ok(false);
    }
    let unit = eps_n.scale(&mu_n.mul(&PowerProduct::from_u64(2)).recip());
    let eps = epsilon_bound(n, nu)?;
    Ok(decided(unit.compare(&eps, DIGIT_CAP), "ε_n/(2μ_n) against ε(n,ν)")? != Ordering::Less)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Achieved unit order set against the worst-case formula.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub n: u64,
    pub nu: u64,
    pub epsilon_formula: BoundValue,
    pub mu_sequence: Vec<String>,
    pub epsilon_sequence: Vec<BoundValue>,
    pub achieved_order: String,
    pub verdict: Verdict,
}

impl BoundReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("n = {}, nu = {}\n", self.n, self.nu);
        s += &format!("epsilon(n,nu) = {}\n", describe(&self.epsilon_formula));
        for (k, mu) in self.mu_sequence.iter().enumerate() {
            s += &format!("mu_{k} = {mu}\n");
        }
        for (k, e) in self.epsilon_sequence.iter().enumerate() {
            s += &format!("epsilon_{k} = {}\n", describe(e));
        }
        s += &format!("achieved order = {}\n", self.achieved_order);
        s += &format!(
            "verdict: {}\n",
            match self.verdict {
                Verdict::Pass => "pass (achieved >= epsilon)",
                Verdict::Fail => "FAIL (achieved < epsilon)",
            }
        );
        s
    }
}

/// Compare an achieved (positive) order with `ε(n,ν)`.
pub fn compare_achieved(n: u64, nu: u64, achieved: &Rational) -> Result<BoundReport> {
    compare_achieved_with_cap(n, nu, achieved, DIGIT_CAP)
}

pub fn compare_achieved_with_cap(
    n: u64,
    nu: u64,
    achieved: &Rational,
    digit_cap: u64,
) -> Result<BoundReport> {
    let eps = epsilon_bound(n, nu)?;
    let verdict = if achieved <= &Rational::from_integer(0.into()) {
        Verdict::Fail
    } else {
        match decided(eps.compare_rational(achieved, digit_cap), "achieved order against ε(n,ν)")?
        {
            Ordering::Greater => Verdict::Fail,
            _ => Verdict::Pass,
        }
    };
    Ok(BoundReport {
        n,
        nu,
        epsilon_formula: eps,
        mu_sequence: mu_sequence(n, nu)?.iter().map(|m| m.to_string()).collect(),
        epsilon_sequence: epsilon_sequence(n, nu)?,
        achieved_order: achieved.to_string(),
        verdict,
    })
}
