use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Integer interval `[lo, hi]` standing for `[lo, hi] / 2^prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub prec: u32,
}

impl Interval {
    pub fn point(x: BigInt, prec: u32) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
            prec,
        }
    }

    fn scale(&self, k: &BigInt) -> Interval {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k.is_negative() {
            Interval {
                lo: b,
                hi: a,
                prec: self.prec,
            }
        } else {
            Interval {
                lo: a,
                hi: b,
                prec: self.prec,
            }
        }
    }

    fn add(&self, o: &Interval) -> Interval {
        debug_assert_eq!(self.prec, o.prec);
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
            prec: self.prec,
        }
    }

    /// `Greater`/`Less` when the intervals are disjoint, `None` otherwise.
    pub fn separate(&self, o: &Interval) -> Option<std::cmp::Ordering> {
        if self.lo > o.hi {
            Some(std::cmp::Ordering::Greater)
        } else if self.hi < o.lo {
            Some(std::cmp::Ordering::Less)
        } else {
            None
        }
    }
}

/// Enclosure of `log2(n)` with `prec` fractional bits, using only integer
/// arithmetic: the mantissa is squared repeatedly with floor and ceiling
/// rounding, and each squaring past 2 yields one bit.
pub fn log2_interval(n: &BigUint, prec: u32) -> Interval {
    assert!(!n.is_zero(), "log2 of zero");
    let k = n.bits() - 1;
    let guard = prec as u64 + 16;
    // mantissa m = n / 2^k in [1, 2), fixed point with `guard` bits
    let shift = |x: &BigUint| -> BigUint {
        if guard >= k {
            x << (guard - k)
        } else {
            x >> (k - guard)
        }
    };
    let mut lo = shift(n);
    let mut hi = if guard >= k {
        lo.clone()
    } else {
        // round up
        let back = &lo << (k - guard);
        if &back == n {
            lo.clone()
        } else {
            &lo + 1u32
        }
    };
    let two = BigUint::one() << (guard + 1);
    let mut acc = BigInt::from(k) << prec;
    let mut width = BigInt::one();
    for i in 1..=prec {
        lo = (&lo * &lo) >> guard;
        let sq = &hi * &hi;
        let low_part = &sq & ((BigUint::one() << guard) - 1u32);
        hi = (sq >> guard) + if low_part.is_zero() { 0u32 } else { 1u32 };
        let (a, b) = (lo >= two, hi >= two);
        if a && b {
            acc += BigInt::one() << (prec - i);
            lo >>= 1;
            hi = (&hi >> 1) + (&hi & BigUint::one());
        } else if !a && !b {
        } else {
            // ambiguous bit: the rest of the expansion lies in [0, 2^{1-i})
            width = BigInt::one() << (prec - i + 1);
            return Interval {
                hi: &acc + width,
                lo: acc,
                prec,
            };
        }
    }
    Interval {
        hi: &acc + width,
        lo: acc,
        prec,
    }
}

fn factor_u64(mut x: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= x {
        let mut e = 0;
        while x % p == 0 {
            x /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

/// Positive rational `∏ p^{e_p}` over primes with exact integer exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PowerProduct {
    exps: BTreeMap<u64, BigInt>,
}

impl PowerProduct {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_u64(x: u64) -> Self {
        assert!(x > 0, "power products are positive");
        let mut out = Self::one();
        for (p, e) in factor_u64(x) {
            out.exps.insert(p, BigInt::from(e));
        }
        out
    }

    pub fn ratio(num: u64, den: u64) -> Self {
        Self::from_u64(num).div(&Self::from_u64(den))
    }

    pub fn exponents(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.exps.iter().map(|(p, e)| (*p, e))
    }

    fn combine(&self, other: &Self, k: &BigInt) -> Self {
        let mut exps = self.exps.clone();
        for (p, e) in &other.exps {
            let v = exps.entry(*p).or_insert_with(BigInt::zero);
            *v += e * k;
            if v.is_zero() {
                exps.remove(p);
            }
        }
        PowerProduct { exps }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.combine(other, &BigInt::one())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.combine(other, &-BigInt::one())
    }

    pub fn pow(&self, e: &BigInt) -> Self {
        PowerProduct {
            exps: if e.is_zero() {
                BTreeMap::new()
            } else {
                self.exps.iter().map(|(p, x)| (*p, x * e)).collect()
            },
        }
    }

    pub fn recip(&self) -> Self {
        self.pow(&-BigInt::one())
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_integer(&self) -> bool {
        self.exps.values().all(|e| !e.is_negative())
    }

    /// Rough `log2` of the value, for size decisions only.
    pub fn log2_estimate(&self) -> f64 {
        self.exps
            .iter()
            .map(|(p, e)| big_to_f64(e) * (*p as f64).log2())
            .sum()
    }

    /// Rough bit size of numerator plus denominator.
    pub fn size_bits_estimate(&self) -> f64 {
        self.exps
            .iter()
            .map(|(p, e)| big_to_f64(&e.abs()) * (*p as f64).log2())
            .sum()
    }

    /// Decimal digits of numerator plus denominator, rounded up.
    pub fn digits_estimate(&self) -> f64 {
        self.size_bits_estimate() * std::f64::consts::LOG10_2 + 1.0
    }

    pub fn log2_interval(&self, prec: u32) -> Interval {
        let mut acc = Interval::point(BigInt::zero(), prec);
        for (p, e) in &self.exps {
            acc = acc.add(&log2_interval(&BigUint::from(*p), prec).scale(e));
        }
        acc
    }

    /// Exact value, or `None` beyond `digit_cap` decimal digits.
    pub fn to_rational(&self, digit_cap: u64) -> Option<BigRational> {
        if self.digits_estimate() > digit_cap as f64 {
            return None;
        }
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (p, e) in &self.exps {
            let m = e.magnitude().to_u64()?;
            let v = num_traits::pow::Pow::pow(BigUint::from(*p), m);
            if e.is_negative() {
                den *= v;
            } else {
                num *= v;
            }
        }
        Some(BigRational::new(
            BigInt::from_biguint(Sign::Plus, num),
            BigInt::from_biguint(Sign::Plus, den),
        ))
    }

    /// Integer value when it is one and fits the cap.
    pub fn to_integer(&self, digit_cap: u64) -> Option<BigUint> {
        if !self.is_integer() {
            return None;
        }
        self.to_rational(digit_cap).map(|r| r.numer().magnitude().clone())
    }

    /// Exact positive rational as a power product (factoring by trial
    /// division, so only for modest numbers).
    pub fn from_rational(r: &BigRational) -> Option<Self> {
        if !r.is_positive() {
            return None;
        }
        let n = r.numer().to_u64()?;
        let d = r.denom().to_u64()?;
        Some(Self::ratio(n, d))
    }

    /// Exact comparison: rigorous log enclosures at growing precision, then
    /// exact evaluation when those cannot separate.
    pub fn cmp_exact(&self, other: &Self, digit_cap: u64) -> Option<std::cmp::Ordering> {
        let q = self.div(other);
        if q.is_one() {
            return Some(std::cmp::Ordering::Equal);
        }
        let mut prec = 64;
        while prec <= 1 << 14 {
            let iv = q.log2_interval(prec);
            if let Some(o) = iv.separate(&Interval::point(BigInt::zero(), prec)) {
                return Some(o);
            }
            prec *= 4;
        }
        let num = q.to_rational(digit_cap)?;
        Some(num.cmp(&BigRational::one()))
    }
}

pub(crate) fn big_to_f64(e: &BigInt) -> f64 {
    e.to_f64().unwrap_or(if e.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational(60) {
            return write!(f, "{r}");
        }
        let num = |f: &mut fmt::Formatter<'_>, neg: bool| -> fmt::Result {
            let mut parts = Vec::new();
            for (p, e) in &self.exps {
                if e.is_negative() == neg {
                    let m = e.magnitude();
                    parts.push(if m.is_one() { format!("{p}") } else { format!("{p}^{m}") });
                }
            }
            if parts.is_empty() {
                return f.write_str("1");
            }
            if parts.len() > 1 && neg {
                write!(f, "({})", parts.join("*"))
            } else {
                f.write_str(&parts.join("*"))
            }
        };
        num(f, false)?;
        if self.exps.values().any(|e| e.is_negative()) {
            f.write_str("/")?;
            num(f, true)?;
        }
        Ok(())
    }
}

/// `a^b` for small `a` as a power product.
pub fn power_of(a: u64, b: &BigUint) -> PowerProduct {
    PowerProduct::from_u64(a).pow(&BigInt::from_biguint(Sign::Plus, b.clone()))
}
