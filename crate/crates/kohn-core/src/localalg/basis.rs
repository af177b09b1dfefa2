use super::order::MonomialOrder;
use super::sorted::SPoly;
use crate::error::{Error, Result};
use crate::polyring::{Monomial, Poly, Rational};
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Resource limits for basis completion and truncated linear algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest total degree a basis element (or truncation) may reach.
    pub degree: u64,
    /// Largest number of critical pairs the queue may ever hold.
    pub pairs: usize,
    /// Largest number of single reduction steps inside one normal form.
    pub reductions: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            degree: 64,
            pairs: 1_000_000,
            reductions: 50_000_000,
        }
    }
}

const PROC: &str = "standard basis";

/// Ideal basis together with the order it is a standard basis for.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    order: MonomialOrder,
    nvars: usize,
    input: Vec<Poly>,
    elements: Vec<Poly>,
    sorted: Vec<SPoly>,
    ecarts: Vec<u64>,
    /// Degree `D` with `m^D` inside the leading ideal, hence inside the
    /// ideal; terms of degree `≥ D` are dropped. Never set when lifts are kept.
    noether: Option<u64>,
    /// `elements[k] = Σ_i lifts[k][i] · input[i]`
    lifts: Option<Vec<Vec<Poly>>>,
    completed: bool,
}

/// One element of the reducer set `T` in Mora's normal form.
struct Reducer {
    poly: SPoly,
    ecart: u64,
    lift: Option<Lift>,
}

/// `h = w·p + Σ a_i · input_i` while normalizing a target `p`.
#[derive(Clone)]
struct Lift {
    w: Poly,
    a: Vec<Poly>,
}

impl Lift {
    fn sub_mul(&mut self, c: &Rational, m: &Monomial, other: &Lift) {
        if !other.w.is_zero() {
            self.w = &self.w - &other.w.mul_term(m, c);
        }
        for (x, y) in self.a.iter_mut().zip(&other.a) {
            if !y.is_zero() {
                *x = &*x - &y.mul_term(m, c);
            }
        }
    }

    fn sub_mul_basis(&mut self, c: &Rational, m: &Monomial, lift: &[Poly]) {
        for (x, y) in self.a.iter_mut().zip(lift) {
            if !y.is_zero() {
                *x = &*x - &y.mul_term(m, c);
            }
        }
    }

    fn scale(&mut self, c: &Rational) {
        self.w = self.w.scale(c);
        for x in &mut self.a {
            *x = x.scale(c);
        }
    }
}

fn check_ring(gens: &[Poly]) -> Result<usize> {
    let n = gens.first().ok_or(Error::Empty("ideal with no generators"))?.nvars();
    for g in gens {
        if g.nvars() != n {
            return Err(Error::Dimension {
                left: n,
                right: g.nvars(),
            });
        }
    }
    Ok(n)
}

impl StandardBasis {
    /// Wrap generators without completing them.
    pub fn uncompleted(gens: Vec<Poly>, order: MonomialOrder) -> Result<Self> {
        let nvars = check_ring(&gens)?;
        let sorted: Vec<SPoly> = gens.iter().map(|g| SPoly::from_poly(g, &order)).collect();
        let ecarts = sorted.iter().map(|s| s.ecart()).collect();
        Ok(StandardBasis {
            order,
            nvars,
            input: gens.clone(),
            elements: gens,
            sorted,
            ecarts,
            noether: None,
            lifts: None,
            completed: false,
        })
    }

    pub fn complete(gens: &[Poly], order: MonomialOrder, caps: &Caps) -> Result<Self> {
        complete_impl(gens, order, caps, false)
    }

    /// Completion that also records how each basis element is generated by
    /// the input, so normal forms can emit membership certificates.
    pub fn complete_with_lifts(gens: &[Poly], order: MonomialOrder, caps: &Caps) -> Result<Self> {
        complete_impl(gens, order, caps, true)
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_completed(&self) -> bool {
        self.completed
    }

    pub fn has_lifts(&self) -> bool {
        self.lifts.is_some()
    }

    /// Input generators the basis was built from.
    pub fn input(&self) -> &[Poly] {
        &self.input
    }

    /// Basis elements.
    pub fn generators(&self) -> &[Poly] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|s| s.lm().clone()).collect()
    }

    /// Lift of basis element `k` in terms of the input.
    pub fn lift(&self, k: usize) -> Option<&[Poly]> {
        self.lifts.as_ref().map(|l| l[k].as_slice())
    }

    fn require_completed(&self) -> Result<()> {
        if !self.completed {
            return Err(Error::domain(PROC, "basis not completed"));
        }
        Ok(())
    }

    /// Remainder of `p`: Mora's weak normal form for the local order, the
    /// fully reduced remainder for global orders. Zero iff `p` is in the ideal
    /// (of the local ring, resp. of the polynomial ring).
    pub fn normal_form(&self, p: &Poly, caps: &Caps) -> Result<Poly> {
        self.require_completed()?;
        Ok(self.reduce(p, caps, false)?.0.to_poly())
    }

    /// Remainder together with `(unit, cofactors)` satisfying
    /// `unit·p = Σ cofactors_i · input_i + remainder`.
    pub fn normal_form_with_certificate(&self, p: &Poly, caps: &Caps) -> Result<(Poly, Poly, Vec<Poly>)> {
        self.require_completed()?;
        if self.lifts.is_none() {
            return Err(Error::domain(PROC, "basis was completed without lifts"));
        }
        let (h, lift) = self.reduce(p, caps, true)?;
        let lift = lift.expect("tracking requested");
        let cof = lift.a.iter().map(|a| -a).collect();
        Ok((h.to_poly(), lift.w, cof))
    }

    pub fn contains(&self, p: &Poly, caps: &Caps) -> Result<bool> {
        Ok(self.normal_form(p, caps)?.is_zero())
    }

    fn reduce(&self, p: &Poly, caps: &Caps, track: bool) -> Result<(SPoly, Option<Lift>)> {
        if p.nvars() != self.nvars {
            return Err(Error::Dimension {
                left: self.nvars,
                right: p.nvars(),
            });
        }
        let h = SPoly::from_poly(p, &self.order);
        let lift = if track {
            Some(Lift {
                w: Poly::one(self.nvars),
                a: vec![Poly::zero(self.nvars); self.input.len()],
            })
        } else {
            None
        };
        let lifts = if track { self.lifts.as_deref() } else { None };
        if self.order.is_local() {
            mora_reduce(h, lift, &self.sorted, &self.ecarts, self.noether, lifts, &self.order, caps)
        } else {
            full_reduce(h, lift, &self.sorted, lifts, &self.order, caps)
        }
    }

    /// Buchberger/Mora criterion: every s-polynomial of two basis elements
    /// reduces to zero.
    pub fn verify_completed(&self, caps: &Caps) -> Result<bool> {
        for i in 0..self.sorted.len() {
            for j in i + 1..self.sorted.len() {
                let (s, _) = spoly(&self.sorted[i], &self.sorted[j], &self.order);
                let (r, _) = if self.order.is_local() {
                    mora_reduce(s, None, &self.sorted, &self.ecarts, self.noether, None, &self.order, caps)?
                } else {
                    full_reduce(s, None, &self.sorted, None, &self.order, caps)?
                };
                if !r.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Smallest `D` with every monomial of degree `D` divisible by one of `lms`.
pub(crate) fn highest_corner(lms: &[Monomial], nvars: usize) -> Option<u64> {
    let mut pure = vec![u32::MAX; nvars];
    for m in lms {
        if m.is_one() {
            return Some(0);
        }
        if let Some(i) = m.pure_power_var() {
            pure[i] = pure[i].min(m.exp(i));
        }
    }
    if pure.iter().any(|&e| e == u32::MAX) {
        return None;
    }
    let lo = pure.iter().copied().max().unwrap_or(0) as u64;
    let hi = pure.iter().map(|&e| e as u64 - 1).sum::<u64>() + 1;
    (lo..hi).find(|&d| all_monomials_of_degree(nvars, d, |m| lms.iter().any(|l| l.divides(m)))).or(Some(hi))
}

fn all_monomials_of_degree(nvars: usize, d: u64, mut pred: impl FnMut(&Monomial) -> bool) -> bool {
    fn rec(i: usize, left: u64, e: &mut Monomial, pred: &mut dyn FnMut(&Monomial) -> bool) -> bool {
        if i + 1 == e.nvars() {
            e.set(i, left as u32);
            return pred(e);
        }
        for k in 0..=left {
            e.set(i, k as u32);
            if !rec(i + 1, left - k, e, pred) {
                e.set(i, 0);
                return false;
            }
        }
        e.set(i, 0);
        true
    }
    if nvars == 0 {
        return true;
    }
    let mut e = Monomial::one(nvars);
    rec(0, d, &mut e, &mut pred)
}

/// s-polynomial and the monomial multipliers used: `s = m_f·f - c·m_g·g`.
fn spoly(f: &SPoly, g: &SPoly, order: &MonomialOrder) -> (SPoly, (Monomial, Rational, Monomial)) {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&l).unwrap();
    let mg = g.lm().quotient_of(&l).unwrap();
    let c = f.lc() / g.lc();
    let fm = SPoly {
        terms: f.terms.iter().map(|(m, a)| (m.mul(&mf), a.clone())).collect(),
        nvars: f.nvars,
    };
    let s = fm.sub_mul(&c, &mg, g, order);
    (s, (mf, c, mg))
}

fn find_divisor<'a, I>(lm: &Monomial, candidates: I) -> Option<usize>
where
    I: Iterator<Item = (usize, &'a Monomial, u64)>,
{
    let mut best: Option<(u64, usize)> = None;
    for (idx, m, ecart) in candidates {
        if m.divides(lm) && best.map_or(true, |(e, _)| ecart < e) {
            best = Some((ecart, idx));
            if ecart == 0 {
                break;
            }
        }
    }
    best.map(|(_, i)| i)
}

/// Mora's normal form with the ecart strategy.
fn mora_reduce(
    mut h: SPoly,
    mut lift: Option<Lift>,
    basis: &[SPoly],
    ecarts: &[u64],
    noether: Option<u64>,
    basis_lifts: Option<&[Vec<Poly>]>,
    order: &MonomialOrder,
    caps: &Caps,
) -> Result<(SPoly, Option<Lift>)> {
    let mut history: Vec<Reducer> = Vec::new();
    let mut steps = 0u64;
    if let Some(d) = noether {
        h.truncate_at(d);
    }
    while !h.is_zero() {
        let lm = h.lm().clone();
        let from_basis = basis.iter().enumerate().map(|(i, g)| (i, g.lm(), ecarts[i]));
        let from_history = history
            .iter()
            .enumerate()
            .map(|(i, t)| (basis.len() + i, t.poly.lm(), t.ecart));
        let Some(idx) = find_divisor(&lm, from_basis.chain(from_history)) else {
            break;
        };
        steps += 1;
        if steps > caps.reductions {
            return Err(Error::resource(PROC, "reduction steps in Mora normal form", caps.reductions));
        }
        let (t_poly, t_ecart) = if idx < basis.len() {
            (&basis[idx], ecarts[idx])
        } else {
            let t = &history[idx - basis.len()];
            (&t.poly, t.ecart)
        };
        let h_ecart = h.ecart();
        let c = h.lc() / t_poly.lc();
        let m = t_poly.lm().quotient_of(&lm).unwrap();
        let next = h.sub_mul(&c, &m, t_poly, order);
        let mut next_lift = None;
        if let Some(l) = &lift {
            let mut nl = l.clone();
            if idx < basis.len() {
                nl.sub_mul_basis(&c, &m, &basis_lifts.expect("lifts")[idx]);
            } else {
                nl.sub_mul(&c, &m, history[idx - basis.len()].lift.as_ref().unwrap());
            }
            next_lift = Some(nl);
        }
        if t_ecart > h_ecart {
            if h.max_degree() > caps.degree {
                return Err(Error::resource(PROC, "total degree of a Mora reducer", caps.degree));
            }
            history.push(Reducer {
                poly: h,
                ecart: h_ecart,
                lift,
            });
        }
        h = next;
        if let Some(d) = noether {
            h.truncate_at(d);
        }
        lift = next_lift;
    }
    Ok((h, lift))
}

/// Full reduction (every term) for global orders.
fn full_reduce(
    h: SPoly,
    mut lift: Option<Lift>,
    basis: &[SPoly],
    basis_lifts: Option<&[Vec<Poly>]>,
    order: &MonomialOrder,
    caps: &Caps,
) -> Result<(SPoly, Option<Lift>)> {
    let nvars = h.nvars;
    let mut done: Vec<(Monomial, Rational)> = Vec::new();
    let mut active = h;
    let mut steps = 0u64;
    while !active.is_zero() {
        let lm = active.lm().clone();
        let found = basis.iter().position(|g| g.lm().divides(&lm));
        match found {
            None => {
                let first = active.terms.remove(0);
                done.push(first);
            }
            Some(idx) => {
                steps += 1;
                if steps > caps.reductions {
                    return Err(Error::resource(PROC, "reduction steps in division", caps.reductions));
                }
                let g = &basis[idx];
                let c = active.lc() / g.lc();
                let m = g.lm().quotient_of(&lm).unwrap();
                active = active.sub_mul(&c, &m, g, order);
                if let Some(l) = lift.as_mut() {
                    l.sub_mul_basis(&c, &m, &basis_lifts.expect("lifts")[idx]);
                }
            }
        }
    }
    Ok((SPoly { terms: done, nvars }, lift))
}

fn complete_impl(gens: &[Poly], order: MonomialOrder, caps: &Caps, with_lifts: bool) -> Result<StandardBasis> {
    let nvars = check_ring(gens)?;
    let ninput = gens.len();
    let mut sorted: Vec<SPoly> = Vec::new();
    let mut ecarts: Vec<u64> = Vec::new();
    let mut lifts: Vec<Vec<Poly>> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        if g.total_degree() > caps.degree {
            return Err(Error::resource(PROC, "total degree of an input generator", caps.degree));
        }
        let mut s = SPoly::from_poly(g, &order);
        let inv = s.make_primitive();
        ecarts.push(s.ecart());
        sorted.push(s);
        if with_lifts {
            let mut l = vec![Poly::zero(nvars); ninput];
            l[i] = Poly::constant(nvars, inv);
            lifts.push(l);
        }
    }
    // Pair queue ordered by lcm degree, then index pair (deterministic).
    let mut queue: BinaryHeap<Reverse<(u64, usize, usize)>> = BinaryHeap::new();
    let mut live: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    let add_pairs = |queue: &mut BinaryHeap<Reverse<(u64, usize, usize)>>,
                         live: &mut std::collections::HashSet<(usize, usize)>,
                         sorted: &[SPoly],
                         t: usize|
     -> Result<()> {
        if !order.is_local() {
            // Gebauer–Möller style chain pruning of existing pairs.
            let lt = sorted[t].lm().clone();
            let stale: Vec<(usize, usize)> = live
                .iter()
                .copied()
                .filter(|&(i, j)| {
                    let lij = sorted[i].lm().lcm(sorted[j].lm());
                    lt.divides(&lij)
                        && sorted[i].lm().lcm(&lt) != lij
                        && sorted[j].lm().lcm(&lt) != lij
                })
                .collect();
            for p in stale {
                live.remove(&p);
            }
        }
        for i in 0..t {
            let (a, b) = (sorted[i].lm(), sorted[t].lm());
            if !order.is_local() && a.coprime(b) {
                continue;
            }
            let d = a.lcm(b).degree();
            queue.push(Reverse((d, i, t)));
            live.insert((i, t));
        }
        if queue.len() > caps.pairs {
            return Err(Error::resource(PROC, "critical pairs in the queue", caps.pairs as u64));
        }
        Ok(())
    };
    let use_corner = order.is_local() && !with_lifts;
    let mut noether: Option<u64> = None;
    let refresh_corner = |sorted: &mut Vec<SPoly>, ecarts: &mut Vec<u64>, noether: &mut Option<u64>| {
        let lms: Vec<Monomial> = sorted.iter().map(|s| s.lm().clone()).collect();
        if let Some(d) = highest_corner(&lms, nvars) {
            if noether.map_or(true, |old| d < old) {
                *noether = Some(d);
                for s in sorted.iter_mut() {
                    s.truncate_keeping_lead(d);
                }
                *ecarts = sorted.iter().map(|s| s.ecart()).collect();
            }
        }
    };
    if use_corner {
        refresh_corner(&mut sorted, &mut ecarts, &mut noether);
    }
    for t in 0..sorted.len() {
        add_pairs(&mut queue, &mut live, &sorted, t)?;
    }
    while let Some(Reverse((lcm_degree, i, j))) = queue.pop() {
        if !live.remove(&(i, j)) {
            continue;
        }
        if noether.is_some_and(|d| lcm_degree >= d) {
            // every term of the s-polynomial lies in m^D
            continue;
        }
        let (s, (mf, c, mg)) = spoly(&sorted[i], &sorted[j], &order);
        let lift = if with_lifts {
            let a: Vec<Poly> = lifts[i]
                .iter()
                .zip(&lifts[j])
                .map(|(x, y)| &x.mul_term(&mf, &Rational::one()) - &y.mul_term(&mg, &c))
                .collect();
            Some(Lift {
                w: Poly::zero(nvars),
                a,
            })
        } else {
            None
        };
        let basis_lifts = if with_lifts { Some(lifts.as_slice()) } else { None };
        let (mut h, lift) = if order.is_local() {
            mora_reduce(s, lift, &sorted, &ecarts, noether, basis_lifts, &order, caps)?
        } else {
            full_reduce(s, lift, &sorted, basis_lifts, &order, caps)?
        };
        if h.is_zero() {
            continue;
        }
        if h.max_degree() > caps.degree {
            return Err(Error::resource(PROC, "total degree of a basis element", caps.degree));
        }
        let inv = h.make_primitive();
        if let Some(mut l) = lift {
            l.scale(&inv);
            lifts.push(l.a);
        }
        ecarts.push(h.ecart());
        sorted.push(h);
        let t = sorted.len() - 1;
        if use_corner && sorted[t].lm().pure_power_var().is_some() {
            refresh_corner(&mut sorted, &mut ecarts, &mut noether);
        }
        add_pairs(&mut queue, &mut live, &sorted, t)?;
    }
    if !order.is_local() {
        interreduce(&mut sorted, &mut lifts, with_lifts, &order, caps)?;
        ecarts = sorted.iter().map(|s| s.ecart()).collect();
    }
    let elements = sorted.iter().map(|s| s.to_poly()).collect();
    Ok(StandardBasis {
        order,
        nvars,
        input: gens.to_vec(),
        elements,
        sorted,
        ecarts,
        noether,
        lifts: if with_lifts { Some(lifts) } else { None },
        completed: true,
    })
}

/// Reduced Gröbner basis: drop elements with redundant leading monomials and
/// tail-reduce the rest. Output sorted by leading monomial.
fn interreduce(
    sorted: &mut Vec<SPoly>,
    lifts: &mut Vec<Vec<Poly>>,
    with_lifts: bool,
    order: &MonomialOrder,
    caps: &Caps,
) -> Result<()> {
    let n = sorted.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && keep[j] && sorted[j].lm().divides(sorted[i].lm()) && (sorted[j].lm() != sorted[i].lm() || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut polys: Vec<SPoly> = Vec::new();
    let mut ls: Vec<Vec<Poly>> = Vec::new();
    for i in 0..n {
        if keep[i] {
            polys.push(sorted[i].clone());
            if with_lifts {
                ls.push(lifts[i].clone());
            }
        }
    }
    let ninput = ls.first().map(|l| l.len()).unwrap_or(0);
    for k in 0..polys.len() {
        let others: Vec<SPoly> = polys
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, p)| p.clone())
            .collect();
        let other_lifts: Vec<Vec<Poly>> = if with_lifts {
            ls.iter()
                .enumerate()
                .filter(|(i, _)| *i != k)
                .map(|(_, l)| l.clone())
                .collect()
        } else {
            Vec::new()
        };
        let head = SPoly {
            terms: vec![polys[k].terms[0].clone()],
            nvars: polys[k].nvars,
        };
        let tail = SPoly {
            terms: polys[k].terms[1..].to_vec(),
            nvars: polys[k].nvars,
        };
        let lift = if with_lifts {
            Some(Lift {
                w: Poly::zero(polys[k].nvars),
                a: vec![Poly::zero(polys[k].nvars); ninput],
            })
        } else {
            None
        };
        let (r, lift) = full_reduce(
            tail,
            lift,
            &others,
            if with_lifts { Some(other_lifts.as_slice()) } else { None },
            order,
            caps,
        )?;
        let mut terms = head.terms;
        terms.extend(r.terms);
        polys[k] = SPoly {
            terms,
            nvars: polys[k].nvars,
        };
        if let Some(l) = lift {
            // element = head + r = old + Σ (a_i) input_i with a from the reductions
            for (x, y) in ls[k].iter_mut().zip(&l.a) {
                *x = &*x + y;
            }
        }
    }
    let mut idx: Vec<usize> = (0..polys.len()).collect();
    idx.sort_by(|&a, &b| order.cmp(polys[b].lm(), polys[a].lm()));
    *sorted = idx.iter().map(|&i| polys[i].clone()).collect();
    if with_lifts {
        *lifts = idx.iter().map(|&i| ls[i].clone()).collect();
    }
    Ok(())
}

/// Completed standard basis for `order` (free-function spelling).
pub fn complete_basis(gens: &[Poly], order: MonomialOrder) -> Result<StandardBasis> {
    StandardBasis::complete(gens, order, &Caps::default())
}

/// `{"order":"local-ds","generators":[…]}`
#[derive(Serialize, Deserialize)]
pub struct BasisJson {
    pub order: String,
    pub generators: Vec<Poly>,
}

impl StandardBasis {
    pub fn to_json(&self) -> BasisJson {
        BasisJson {
            order: self.order.name(),
            generators: self.elements.clone(),
        }
    }
}
