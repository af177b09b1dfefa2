//! Term lists kept sorted under the active order; the reduction kernels work
//! on these instead of the canonical map so that leading terms are O(1) and
//! `h - c·m·g` is a linear merge.

use super::order::MonomialOrder;
use crate::polyring::{Monomial, Poly, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub(crate) struct SPoly {
    pub terms: Vec<(Monomial, Rational)>,
    pub nvars: usize,
}

impl SPoly {
    pub fn from_poly(p: &Poly, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Rational)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        SPoly {
            terms,
            nvars: p.nvars(),
        }
    }

    pub fn to_poly(&self) -> Poly {
        let map: BTreeMap<Monomial, Rational> = self.terms.iter().cloned().collect();
        Poly::from_terms(
            self.nvars,
            map.into_iter().map(|(m, c)| (m.exponents().to_vec(), c)),
        )
        .expect("consistent variable count")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    pub fn max_degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// `deg(f) - deg(LM f)`
    pub fn ecart(&self) -> u64 {
        match self.lead() {
            None => 0,
            Some((m, _)) => self.max_degree() - m.degree(),
        }
    }

    pub fn scale(&mut self, c: &Rational) {
        for (_, a) in &mut self.terms {
            *a *= c;
        }
    }

    /// Scale to coprime integer coefficients with a positive leading one;
    /// returns the factor used. Keeps coefficients far smaller than monic
    /// normalization over the rationals.
    pub fn make_primitive(&mut self) -> Rational {
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(&(c.numer() * (&den / c.denom())));
        }
        if self.lc().is_negative() {
            g = -g;
        }
        let factor = Rational::new(den, g);
        self.scale(&factor);
        factor
    }

    /// `self - c·m·g`, merging two sorted lists.
    pub fn sub_mul(&self, c: &Rational, m: &Monomial, g: &SPoly, order: &MonomialOrder) -> SPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut gi = g.terms.iter().map(|(n, a)| (n.mul(m), a * c)).peekable();
        while i < self.terms.len() {
            match gi.peek() {
                None => break,
                Some((gm, _)) => match order.cmp(&self.terms[i].0, gm) {
                    Ordering::Greater => {
                        out.push(self.terms[i].clone());
                        i += 1;
                    }
                    Ordering::Less => {
                        let (gm, ga) = gi.next().unwrap();
                        out.push((gm, -ga));
                    }
                    Ordering::Equal => {
                        let (_, ga) = gi.next().unwrap();
                        let v = &self.terms[i].1 - ga;
                        if !v.is_zero() {
                            out.push((self.terms[i].0.clone(), v));
                        }
                        i += 1;
                    }
                },
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (gm, ga) in gi {
            out.push((gm, -ga));
        }
        SPoly {
            terms: out,
            nvars: self.nvars,
        }
    }

    /// Drop every term of total degree at least `d`.
    pub fn truncate_at(&mut self, d: u64) {
        self.terms.retain(|(m, _)| m.degree() < d);
    }

    /// As `truncate_at`, but a leading term of degree `≥ d` survives alone.
    pub fn truncate_keeping_lead(&mut self, d: u64) {
        if self.terms.is_empty() {
            return;
        }
        if self.lm().degree() >= d {
            self.terms.truncate(1);
        } else {
            self.truncate_at(d);
        }
    }
}
