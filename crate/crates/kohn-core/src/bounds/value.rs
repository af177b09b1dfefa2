use super::power::{log2_interval, Interval, PowerProduct};
use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Decimal digits beyond which exponents stay symbolic.
pub const DIGIT_CAP: u64 = 1_000_000;

/// Positive number `prefactor · ∏ base_i^(-E_i)` where each `E_i` is a
/// positive integer kept as a power product, so towers such as
/// `(2n+2)^(2(nν)^((3n)^(n+1)))` stay exact without being expanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundValue {
    prefactor: PowerProduct,
    powers: Vec<(u64, PowerProduct)>,
}

impl BoundValue {
    pub fn exact(p: PowerProduct) -> Self {
        BoundValue {
            prefactor: p,
            powers: Vec::new(),
        }
    }

    /// `prefactor · base^(-exponent)`
    pub fn inverse_power(prefactor: PowerProduct, base: u64, exponent: PowerProduct) -> Self {
        BoundValue {
            prefactor,
            powers: vec![(base, exponent)],
        }
    }

    pub fn prefactor(&self) -> &PowerProduct {
        &self.prefactor
    }

    pub fn powers(&self) -> &[(u64, PowerProduct)] {
        &self.powers
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut powers = self.powers.clone();
        powers.extend(other.powers.iter().cloned());
        BoundValue {
            prefactor: self.prefactor.mul(&other.prefactor),
            powers,
        }
    }

    pub fn scale(&self, p: &PowerProduct) -> Self {
        BoundValue {
            prefactor: self.prefactor.mul(p),
            powers: self.powers.clone(),
        }
    }

    /// Rough `log2` of every exponent, to decide whether to expand.
    fn exponent_bits(&self) -> f64 {
        self.powers
            .iter()
            .map(|(_, e)| e.log2_estimate())
            .fold(0.0, f64::max)
    }

    /// Flatten into a single power product when every exponent has at most
    /// `digit_cap` digits.
    pub fn flatten(&self, digit_cap: u64) -> Option<PowerProduct> {
        if self.exponent_bits() * std::f64::consts::LOG10_2 > digit_cap as f64 {
            return None;
        }
        let mut out = self.prefactor.clone();
        for (b, e) in &self.powers {
            let e = e.to_integer(digit_cap)?;
            out = out.div(&PowerProduct::from_u64(*b).pow(&BigInt::from_biguint(Sign::Plus, e)));
        }
        Some(out)
    }

    pub fn is_symbolic(&self, digit_cap: u64) -> bool {
        self.flatten(digit_cap).is_none()
    }

    /// Exact rational when the whole number has at most `digit_cap` digits.
    pub fn to_rational(&self, digit_cap: u64) -> Option<BigRational> {
        self.flatten(digit_cap)?.to_rational(digit_cap)
    }

    /// Rough `log2(-log2(x))` for a value far below one.
    pub fn log2_log2_estimate(&self) -> f64 {
        let mut best = f64::NEG_INFINITY;
        for (b, e) in &self.powers {
            best = best.max(e.log2_estimate() + (*b as f64).log2().log2());
        }
        best
    }

    /// Exact comparison. Undecided (`None`) only when the double logarithms
    /// nearly coincide and some exponent is too big to expand.
    pub fn compare(&self, other: &Self, digit_cap: u64) -> Option<Ordering> {
        // The double-log enclosures are cheap and settle far-apart towers
        // without expanding any exponent.
        if let Some(o) = self.coarse_compare(other) {
            return Some(o);
        }
        if let (Some(a), Some(b)) = (self.flatten(digit_cap), other.flatten(digit_cap)) {
            return a.cmp_exact(&b, digit_cap);
        }
        None
    }

    /// Compare `V = -log2(x)` at the double-log level: x < y iff V_x > V_y.
    fn coarse_compare(&self, other: &Self) -> Option<Ordering> {
        match (self.double_log()?, other.double_log()?) {
            (DoubleLog::AtLeastOne, DoubleLog::AtLeastOne) => None,
            (DoubleLog::AtLeastOne, DoubleLog::Below(_)) => Some(Ordering::Greater),
            (DoubleLog::Below(_), DoubleLog::AtLeastOne) => Some(Ordering::Less),
            (DoubleLog::Below(a), DoubleLog::Below(b)) => a.separate(&b).map(Ordering::reverse),
        }
    }

    fn double_log(&self) -> Option<DoubleLog> {
        if self.powers.is_empty() {
            flat_double_log(&self.prefactor)
        } else {
            self.tower_double_log().map(DoubleLog::Below)
        }
    }

    /// Enclosure of `log2(-log2 x)` when the tower part dominates the
    /// prefactor, else `None`.
    fn tower_double_log(&self) -> Option<Interval> {
        let mut lo_max: Option<BigInt> = None;
        let mut hi_max: Option<BigInt> = None;
        for (b, e) in &self.powers {
            // log2(E·log2 b) = log2 E + log2 log2 b
            let le = e.log2_interval(PREC);
            let lb = log2_interval(&BigUint::from(*b), PREC);
            if !lb.lo.is_positive() {
                continue;
            }
            let llb = log2_of_scaled(&lb, PREC);
            let lo = &le.lo + &llb.lo;
            let hi = &le.hi + &llb.hi;
            lo_max = Some(lo_max.map_or(lo.clone(), |m| m.max(lo)));
            hi_max = Some(hi_max.map_or(hi.clone(), |m| m.max(hi)));
        }
        let (lo, hi) = (lo_max?, hi_max?);
        // a sum of k positive terms is at most k times the largest
        let k = self.powers.len() as u64;
        let slack = log2_interval(&BigUint::from(k), PREC).hi;
        // the prefactor shifts V by a relative δ = |log2 pref| / T < 2^-gap,
        // which moves log2 V by less than 2δ
        let pref = self.prefactor.log2_interval(PREC);
        let pref_abs = pref.lo.abs().max(pref.hi.abs());
        let mut fuzz = BigInt::zero();
        if !pref_abs.is_zero() {
            let pref_bits = BigInt::from(pref_abs.bits()) - PREC as i64;
            let gap = (&lo >> PREC) - pref_bits;
            if gap < BigInt::from(2) {
                return None;
            }
            let gap = gap.to_u64().unwrap_or(u64::MAX);
            fuzz = if gap > PREC as u64 {
                BigInt::one()
            } else {
                BigInt::one() << (PREC as u64 + 1 - gap)
            };
        }
        Some(Interval {
            lo: lo - &fuzz,
            hi: hi + slack + fuzz,
            prec: PREC,
        })
    }
}

const PREC: u32 = 32;

enum DoubleLog {
    AtLeastOne,
    Below(Interval),
}

fn flat_double_log(p: &PowerProduct) -> Option<DoubleLog> {
    let iv = p.log2_interval(PREC);
    if !iv.lo.is_negative() {
        return Some(DoubleLog::AtLeastOne);
    }
    if !iv.hi.is_negative() {
        return None;
    }
    let v = Interval {
        lo: -iv.hi,
        hi: -iv.lo,
        prec: PREC,
    };
    Some(DoubleLog::Below(log2_of_scaled(&v, PREC)))
}

/// `log2` of a positive fixed-point interval `[lo, hi] / 2^prec`.
fn log2_of_scaled(iv: &Interval, prec: u32) -> Interval {
    let lo = log2_interval(iv.lo.magnitude(), prec);
    let hi = log2_interval(iv.hi.magnitude(), prec);
    let shift = BigInt::from(iv.prec) << prec;
    Interval {
        lo: lo.lo - &shift,
        hi: hi.hi - shift,
        prec,
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational(200) {
            return write!(f, "{r}");
        }
        write!(f, "{}", self.prefactor)?;
        for (b, e) in &self.powers {
            write!(f, " * {b}^-({e})")?;
        }
        Ok(())
    }
}

/// Short human summary of a possibly huge value: exact text when small,
/// otherwise `2^-(≈…)` style magnitude.
pub fn describe(v: &BoundValue) -> String {
    if let Some(r) = v.to_rational(200) {
        return r.to_string();
    }
    if let Some(p) = v.flatten(DIGIT_CAP) {
        let l = p.log2_estimate();
        return format!("2^({l:.6e}) [{v}]");
    }
    format!("2^-(2^{:.6}) [{v}]", v.log2_log2_estimate())
}

impl BoundValue {
    pub fn one() -> Self {
        Self::exact(PowerProduct::one())
    }
}

impl BoundValue {
    /// Compare `self` with a positive rational.
    pub fn compare_rational(&self, r: &BigRational, digit_cap: u64) -> Option<Ordering> {
        if !r.is_positive() {
            return Some(Ordering::Greater);
        }
        if let Some(p) = PowerProduct::from_rational(r) {
            return self.compare(&BoundValue::exact(p), digit_cap);
        }
        if let Some(x) = self.to_rational(digit_cap) {
            return Some(x.cmp(r));
        }
        let lr = |prec| {
            let a = log2_interval(r.numer().magnitude(), prec);
            let b = log2_interval(r.denom().magnitude(), prec);
            Interval {
                lo: a.lo - b.hi,
                hi: a.hi - b.lo,
                prec,
            }
        };
        if let Some(p) = self.flatten(digit_cap) {
            let mut prec = 64;
            while prec <= 1 << 14 {
                if let Some(o) = p.log2_interval(prec).separate(&lr(prec)) {
                    return Some(o);
                }
                prec *= 4;
            }
            return None;
        }
        let mine = self.tower_double_log()?;
        let iv = lr(PREC);
        if !iv.lo.is_negative() {
            return Some(Ordering::Less);
        }
        if !iv.hi.is_negative() {
            return None;
        }
        let v = Interval {
            lo: -iv.hi,
            hi: -iv.lo,
            prec: PREC,
        };
        mine.separate(&log2_of_scaled(&v, PREC)).map(Ordering::reverse)
    }
}

impl serde::Serialize for BoundValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
