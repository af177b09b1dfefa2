//! Truncated Macaulay-matrix oracle for the local multiplicity. Shares no code
//! with the standard basis engine.

use crate::error::{Error, Result};
use crate::polyring::{Monomial, Poly, Rational};
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

fn monomials_below(nvars: usize, d: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut e = vec![0u32; nvars];
    fn rec(i: usize, left: u64, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == e.len() {
            out.push(Monomial::from_exponents(e));
            return;
        }
        for k in 0..=left {
            e[i] = k as u32;
            rec(i + 1, left - k, e, out);
        }
        e[i] = 0;
    }
    if d == 0 {
        return out;
    }
    rec(0, d - 1, &mut e, &mut out);
    out
}

/// Row echelon form over the rationals, rows as sparse column maps.
struct Echelon {
    pivots: HashMap<usize, BTreeMap<usize, Rational>>,
}

impl Echelon {
    fn insert(&mut self, mut row: BTreeMap<usize, Rational>) {
        while let Some((&col, _)) = row.first_key_value() {
            match self.pivots.get(&col) {
                None => {
                    let inv = row[&col].recip();
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(col, row);
                    return;
                }
                Some(p) => {
                    let c = row[&col].clone();
                    for (k, v) in p {
                        let e = row.entry(*k).or_insert_with(Rational::zero);
                        *e -= &c * v;
                        if e.is_zero() {
                            row.remove(k);
                        }
                    }
                }
            }
        }
    }
}

/// `dim C[z]/(gens + m^D)` for one `D`.
pub fn truncated_quotient_dim(gens: &[Poly], d: u64) -> Result<u64> {
    let nvars = gens.first().ok_or(Error::Empty("ideal with no generators"))?.nvars();
    let cols = monomials_below(nvars, d);
    // Lowest degree first so pivots sit on low-order terms.
    let index: HashMap<Monomial, usize> = cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut ech = Echelon {
        pivots: HashMap::new(),
    };
    for g in gens {
        let Some(ord) = g.order() else { continue };
        if ord >= d {
            continue;
        }
        for m in &cols {
            if m.degree() + ord >= d {
                continue;
            }
            let row: BTreeMap<usize, Rational> = g
                .terms()
                .filter_map(|(t, c)| {
                    let mt = t.mul(m);
                    (mt.degree() < d).then(|| (index[&mt], c.clone()))
                })
                .collect();
            if !row.is_empty() {
                ech.insert(row);
            }
        }
    }
    Ok(cols.len() as u64 - ech.pivots.len() as u64)
}

/// Local multiplicity from truncations: the first `D` with
/// `dim_{D+1} = dim_D` (then `m^D ⊆ I` by Nakayama). `None` if no such
/// `D + 1 ≤ degree_cap`.
pub fn macaulay_multiplicity(gens: &[Poly], degree_cap: u64) -> Result<Option<u64>> {
    if degree_cap < 1 {
        return Err(Error::domain("macaulay multiplicity", "degree cap must be at least 1"));
    }
    let mut prev = truncated_quotient_dim(gens, 1)?;
    for d in 1..degree_cap {
        let next = truncated_quotient_dim(gens, d + 1)?;
        if next == prev {
            return Ok(Some(prev));
        }
        prev = next;
    }
    Ok(None)
}
