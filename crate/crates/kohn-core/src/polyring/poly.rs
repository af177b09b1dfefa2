use super::monomial::Monomial;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Multivariate polynomial over Q in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), c)
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.nvars(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    /// The coordinate function `z_i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Result<Self> {
        if i >= nvars {
            return Err(Error::IndexOutOfRange { index: i, nvars });
        }
        Ok(Self::monomial(nvars, Monomial::var(nvars, i), Rational::one()))
    }

    /// Build from `(exponents, coefficient)` pairs; repeated monomials add up.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Poly::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(Error::Dimension {
                    left: nvars,
                    right: exps.len(),
                });
            }
            p.add_term(Monomial::from_exponents(&exps), &c);
        }
        Ok(p)
    }

    pub(crate) fn from_map(nvars: usize, terms: BTreeMap<Monomial, Rational>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Poly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Invertible as a germ at the origin.
    pub fn is_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Lowest total degree of a term (the order of vanishing at 0).
    pub fn order(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m.exp(i) > 0))
            .collect()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let (big, small) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        Ok(mul_impl(self, other))
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c · m · self`
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Poly> {
        self.nth_derivative(i, 1)
    }

    /// `∂^k p / ∂z_i^k`
    pub fn nth_derivative(&self, i: usize, k: u32) -> Result<Poly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e < k {
                continue;
            }
            let mut falling = BigInt::one();
            for t in 0..k {
                falling *= BigInt::from(e - t);
            }
            let mut dm = m.clone();
            dm.set(i, e - k);
            terms.insert(dm, c * Rational::from_integer(falling));
        }
        Ok(Poly {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::Dimension {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut powers: Vec<Vec<Rational>> = point.iter().map(|x| vec![Rational::one(), x.clone()]).collect();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &point[i];
                    table.push(next);
                }
                t *= &table[e as usize];
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitution `p(g_1, …, g_m)`; the `g_i` share a common variable count.
    pub fn compose(&self, gs: &[Poly]) -> Result<Poly> {
        if gs.len() != self.nvars {
            return Err(Error::Count {
                expected: self.nvars,
                got: gs.len(),
            });
        }
        let target = match gs.first() {
            Some(g) => g.nvars,
            None => {
                // Constant polynomial in zero variables.
                return Ok(Poly::zero(0));
            }
        };
        for g in gs {
            if g.nvars != target {
                return Err(Error::Dimension {
                    left: target,
                    right: g.nvars,
                });
            }
        }
        let terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        let mut cache = PowerCache::new(gs);
        Ok(horner(&terms, 0, &mut cache, target))
    }

    /// `p(0, …, 0, z_i, 0, …, 0)` vanishing order; `None` means infinity.
    pub fn ord_in_variable(&self, i: usize) -> Result<Option<u32>> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        Ok(self
            .terms
            .keys()
            .filter(|m| m.exponents().iter().enumerate().all(|(j, &e)| j == i || e == 0))
            .map(|m| m.exp(i))
            .min())
    }

    /// Coefficient of `z_i^e` viewing `p` as a polynomial in `z_i`.
    pub fn coefficient_in(&self, i: usize, e: u32) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.exp(i) == e {
                let mut n = m.clone();
                n.set(i, 0);
                terms.insert(n, c.clone());
            }
        }
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Drop every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u64) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-index variables: variable `i` of `self` becomes variable `map[i]`
    /// of a ring with `nvars` variables.
    pub fn rename(&self, nvars: usize, map: &[usize]) -> Result<Poly> {
        if map.len() != self.nvars {
            return Err(Error::Count {
                expected: self.nvars,
                got: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&j| j >= nvars) {
            return Err(Error::IndexOutOfRange { index: bad, nvars });
        }
        let mut out = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut n = Monomial::one(nvars);
            for (i, &e) in m.exponents().iter().enumerate() {
                let j = map[i];
                n.set(j, n.exp(j) + e);
            }
            out.add_term(n, c);
        }
        Ok(out)
    }

    /// Divide out the leading coefficient of the given term.
    pub fn monic_at(&self, m: &Monomial) -> Option<Poly> {
        let c = self.terms.get(m)?;
        Some(self.scale(&c.recip()))
    }

    /// Scale so that coefficients are coprime integers with a positive
    /// coefficient at the lexicographically largest monomial.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            let n = c.numer() * (&den / c.denom());
            g = g.gcd(&n);
        }
        let (_, last) = self.terms.iter().next_back().unwrap();
        let sign = if last.is_negative() { -1 } else { 1 };
        let factor = Rational::new(den * BigInt::from(sign), g);
        self.scale(&factor)
    }

    pub fn max_coefficient_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.numer().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }

    pub fn is_scalar_multiple_of(&self, other: &Poly) -> Option<Rational> {
        if self.nvars != other.nvars || self.len() != other.len() {
            return None;
        }
        let (m, c) = other.terms.iter().next()?;
        let d = self.terms.get(m)?;
        let s = d / c;
        for (m, c) in &other.terms {
            if self.terms.get(m)? != &(c * &s) {
                return None;
            }
        }
        Some(s)
    }
}

fn mul_impl(p: &Poly, q: &Poly) -> Poly {
    let n = p.nvars;
    if p.is_zero() || q.is_zero() {
        return Poly::zero(n);
    }
    if p.len() == 1 {
        let (m, c) = p.terms.iter().next().unwrap();
        return q.mul_term(m, c);
    }
    if q.len() == 1 {
        let (m, c) = q.terms.iter().next().unwrap();
        return p.mul_term(m, c);
    }
    // Clear denominators, multiply over Z with packed monomial keys, restore.
    let (pi, pd) = integer_parts(p);
    let (qi, qd) = integer_parts(q);
    let bounds: Vec<u64> = (0..n)
        .map(|i| p.degree_in(i) as u64 + q.degree_in(i) as u64 + 1)
        .collect();
    let packable = bounds
        .iter()
        .try_fold(1u128, |acc, &b| acc.checked_mul(b as u128))
        .is_some();
    let den = Rational::from_integer(pd * qd);
    let mut out = BTreeMap::new();
    if packable {
        let pack = |m: &Monomial| -> u128 {
            let mut key = 0u128;
            for (i, &e) in m.exponents().iter().enumerate().rev() {
                key = key * bounds[i] as u128 + e as u128;
            }
            key
        };
        let pk: Vec<(u128, &BigInt)> = pi.iter().map(|(m, c)| (pack(m), c)).collect();
        let qk: Vec<(u128, &BigInt)> = qi.iter().map(|(m, c)| (pack(m), c)).collect();
        let mut acc: HashMap<u128, BigInt> = HashMap::with_capacity(pk.len() * qk.len() / 2 + 1);
        for (a, ca) in &pk {
            for (b, cb) in &qk {
                let prod = *ca * *cb;
                match acc.entry(a + b) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += prod;
                    }
                }
            }
        }
        for (key, c) in acc {
            if c.is_zero() {
                continue;
            }
            let mut key = key;
            let mut exps = Vec::with_capacity(n);
            for b in &bounds {
                exps.push((key % *b as u128) as u32);
                key /= *b as u128;
            }
            out.insert(Monomial::from_exponents(&exps), Rational::from_integer(c) / &den);
        }
    } else {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (a, ca) in &pi {
            for (b, cb) in &qi {
                *acc.entry(a.mul(b)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        for (m, c) in acc {
            if !c.is_zero() {
                out.insert(m, Rational::from_integer(c) / &den);
            }
        }
    }
    Poly { nvars: n, terms: out }
}

/// Integer numerators over a common denominator.
fn integer_parts(p: &Poly) -> (Vec<(&Monomial, BigInt)>, BigInt) {
    let mut den = BigInt::one();
    for c in p.terms.values() {
        if !c.denom().is_one() {
            den = den.lcm(c.denom());
        }
    }
    let ints = p
        .terms
        .iter()
        .map(|(m, c)| {
            let v = if c.denom().is_one() {
                c.numer() * &den
            } else {
                c.numer() * (&den / c.denom())
            };
            (m, v)
        })
        .collect();
    (ints, den)
}

struct PowerCache<'a> {
    gs: &'a [Poly],
    powers: Vec<Vec<Poly>>,
}

impl<'a> PowerCache<'a> {
    fn new(gs: &'a [Poly]) -> Self {
        PowerCache {
            gs,
            powers: gs.iter().map(|g| vec![Poly::one(g.nvars), g.clone()]).collect(),
        }
    }

    fn get(&mut self, i: usize, e: u32) -> &Poly {
        while self.powers[i].len() <= e as usize {
            let next = &self.powers[i][self.powers[i].len() - 1] * &self.gs[i];
            self.powers[i].push(next);
        }
        &self.powers[i][e as usize]
    }
}

// Terms are sorted lexicographically, so the terms sharing the exponents of
// variables < v form a contiguous run; split that run on variable v.
fn horner(terms: &[(&Monomial, &Rational)], v: usize, cache: &mut PowerCache, target: usize) -> Poly {
    if terms.is_empty() {
        return Poly::zero(target);
    }
    let nv = terms[0].0.nvars();
    if v == nv {
        let mut c = Rational::zero();
        for (_, a) in terms {
            c += *a;
        }
        return Poly::constant(target, c);
    }
    // Group by exponent of variable v (runs are contiguous in lex order).
    let mut groups: Vec<(u32, &[(&Monomial, &Rational)])> = Vec::new();
    let mut start = 0;
    for i in 1..=terms.len() {
        if i == terms.len() || terms[i].0.exp(v) != terms[start].0.exp(v) {
            groups.push((terms[start].0.exp(v), &terms[start..i]));
            start = i;
        }
    }
    if groups.len() == 1 && groups[0].0 == 0 {
        return horner(terms, v + 1, cache, target);
    }
    // Horner in g_v from the highest exponent down.
    let mut acc = Poly::zero(target);
    let mut prev_e: Option<u32> = None;
    for &(e, run) in groups.iter().rev() {
        if let Some(pe) = prev_e {
            acc = &acc * cache.get(v, pe - e);
        }
        let inner = horner(run, v + 1, cache, target);
        acc = &acc + &inner;
        prev_e = Some(e);
    }
    if let Some(pe) = prev_e {
        if pe > 0 {
            acc = &acc * cache.get(v, pe);
        }
    }
    acc
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomials in different rings")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomials in different rings")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomials in different rings")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
