//! Exact local membership certificates through a global basis.
//!
//! If `p` lies in `I·O`, some `s` with `s(0) ≠ 0` has `s·p ∈ I`. Such an `s`
//! is found by linear algebra on the global normal forms of `x^β·p`, after
//! which global division (always finite) yields the cofactors. This avoids
//! the long unit series that Mora's division with lifts runs into on
//! inhomogeneous input.

use super::basis::{Caps, StandardBasis};
use super::certificate::MembershipCertificate;
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::polyring::{Monomial, Poly, Rational};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

const PROC: &str = "local certificate";

type Vector = BTreeMap<Monomial, Rational>;

struct Row {
    vec: Vector,
    comb: HashMap<Monomial, Rational>,
}

fn to_vector(p: &Poly) -> Vector {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

fn axpy_map(target: &mut HashMap<Monomial, Rational>, k: &Rational, src: &HashMap<Monomial, Rational>) {
    for (m, c) in src {
        let e = target.entry(m.clone()).or_insert_with(Rational::zero);
        *e -= k * c;
    }
}

fn axpy_vec(target: &mut Vector, k: &Rational, src: &Vector) {
    for (m, c) in src {
        let e = target.entry(m.clone()).or_insert_with(Rational::zero);
        *e -= k * c;
        if e.is_zero() {
            target.remove(m);
        }
    }
}

/// Reusable certifier for one ideal.
#[derive(Clone, Debug)]
pub struct LocalCertifier {
    global: StandardBasis,
    caps: Caps,
}

impl LocalCertifier {
    pub fn new(gens: &[Poly], caps: &Caps) -> Result<Self> {
        let global = StandardBasis::complete_with_lifts(gens, MonomialOrder::Degrevlex, caps)?;
        Ok(LocalCertifier {
            global,
            caps: caps.clone(),
        })
    }

    pub fn generators(&self) -> &[Poly] {
        self.global.input()
    }

    /// Certificate `s·p = Σ a_i f_i`, `s(0) = 1`; fails if none is found
    /// with `deg s` within the degree cap (in particular if `p ∉ I·O`).
    pub fn certify(&self, p: &Poly) -> Result<MembershipCertificate> {
        let n = self.global.nvars();
        let nf = |q: &Poly| self.global.normal_form(q, &self.caps);
        let base = nf(p)?;
        let unit = if base.is_zero() {
            Poly::one(n)
        } else {
            self.find_unit(&base)?
        };
        let sp = unit.checked_mul(p)?;
        let (rem, w, cof) = self.global.normal_form_with_certificate(&sp, &self.caps)?;
        debug_assert!(w == Poly::one(n));
        if !rem.is_zero() {
            return Err(Error::verification(PROC, "unit multiple did not reduce to zero"));
        }
        Ok(MembershipCertificate {
            unit,
            cofactors: cof,
            target: p.clone(),
            generators: self.global.input().to_vec(),
        })
    }

    fn find_unit(&self, base: &Poly) -> Result<Poly> {
        let n = self.global.nvars();
        let mut rows: BTreeMap<Monomial, Row> = BTreeMap::new();
        let one = Monomial::one(n);
        let mut layer: Vec<(Monomial, Poly)> = vec![(one.clone(), base.clone())];
        for _ in 1..=self.caps.degree {
            let mut next: Vec<(Monomial, Poly)> = Vec::new();
            for (beta, v) in &layer {
                // extend only by variables at or after the last one used, so
                // each monomial appears once
                let start = if beta.is_one() {
                    0
                } else {
                    (0..n).rev().find(|&i| beta.exp(i) > 0).unwrap()
                };
                for i in start..n {
                    let b = beta.mul(&Monomial::var(n, i));
                    let zv = v.mul_term(&Monomial::var(n, i), &Rational::one());
                    let nv = self.global.normal_form(&zv, &self.caps)?;
                    self.insert(&mut rows, to_vector(&nv), b.clone());
                    next.push((b, nv));
                }
            }
            // Is NF(p) in the span of the NF(x^β p) so far?
            let mut t = to_vector(base);
            let mut d: HashMap<Monomial, Rational> = HashMap::new();
            while let Some((m, c)) = t.iter().next().map(|(m, c)| (m.clone(), c.clone())) {
                let Some(row) = rows.get(&m) else { break };
                axpy_vec(&mut t, &c, &row.vec);
                let neg = -c;
                axpy_map(&mut d, &neg, &row.comb);
            }
            if t.is_empty() {
                // NF(p) = Σ d_β NF(x^β p)  ⇒  s = 1 - Σ d_β x^β
                let mut s = Poly::one(n);
                for (beta, c) in d {
                    if !c.is_zero() {
                        s = &s - &Poly::monomial(n, beta, c);
                    }
                }
                return Ok(s);
            }
            if next.is_empty() {
                break;
            }
            layer = next;
        }
        Err(Error::resource(PROC, "degree of the local unit", self.caps.degree))
    }

    fn insert(&self, rows: &mut BTreeMap<Monomial, Row>, mut vec: Vector, beta: Monomial) {
        let mut comb: HashMap<Monomial, Rational> = HashMap::new();
        comb.insert(beta, Rational::one());
        while let Some((m, c)) = vec.iter().next().map(|(m, c)| (m.clone(), c.clone())) {
            match rows.get(&m) {
                Some(row) => {
                    axpy_vec(&mut vec, &c, &row.vec);
                    axpy_map(&mut comb, &c, &row.comb);
                }
                None => {
                    let inv = c.recip();
                    for v in vec.values_mut() {
                        *v *= &inv;
                    }
                    for v in comb.values_mut() {
                        *v *= &inv;
                    }
                    comb.retain(|_, v| !v.is_zero());
                    rows.insert(m, Row { vec, comb });
                    return;
                }
            }
        }
    }
}
