use crate::error::Result;
use crate::localalg::{Caps, MonomialOrder, StandardBasis};
use crate::polyring::{poly_det, Monomial, Poly};

/// Largest rank of the graph algebra handled by the norm shortcut.
const MAX_RANK: usize = 64;

fn y_degree(m: &Monomial, e: usize) -> u64 {
    m.exponents()[..e].iter().map(|&x| x as u64).sum()
}

fn split_top(p: &Poly, e: usize) -> (u64, Poly, Poly) {
    let d = p.terms().map(|(m, _)| y_degree(m, e)).max().unwrap_or(0);
    let mut top = Poly::zero(p.nvars());
    let mut rest = Poly::zero(p.nvars());
    for (m, c) in p.terms() {
        let t = Poly::monomial(p.nvars(), m.clone(), c.clone());
        if y_degree(m, e) == d {
            top = &top + &t;
        } else {
            rest = &rest + &t;
        }
    }
    (d, top, rest)
}

/// `C[w][y] / (graph)` when the top `y`-forms of the graph generators have
/// constant coefficients and cut out only the origin: then it is a free
/// `C[w]`-module on the standard monomials of those forms.
struct GraphAlgebra {
    e: usize,
    tops: StandardBasis,
    /// `g_i + T_i`, of lower `y`-degree than `T_i`.
    tails: Vec<Poly>,
    basis: Vec<Monomial>,
}

impl GraphAlgebra {
    fn new(graph: &[Poly], e: usize, caps: &Caps) -> Result<Option<Self>> {
        let Some(nvars) = graph.first().map(Poly::nvars) else { return Ok(None) };
        let mut tops = Vec::with_capacity(graph.len());
        let mut tails = Vec::with_capacity(graph.len());
        for g in graph {
            let (d, top, rest) = split_top(g, e);
            if d == 0 || top.terms().any(|(m, _)| m.exponents()[e..].iter().any(|&x| x > 0)) {
                return Ok(None);
            }
            tops.push(-&top);
            tails.push(rest);
        }
        let sb = StandardBasis::complete_with_lifts(&tops, MonomialOrder::Degrevlex, caps)?;
        let lms = sb.leading_monomials();
        let mut pure = vec![None; e];
        for m in &lms {
            if let Some(i) = m.pure_power_var().filter(|&i| i < e) {
                pure[i] = Some(pure[i].map_or(m.exp(i), |p: u32| p.min(m.exp(i))));
            }
        }
        let Some(box_sizes) = pure.into_iter().collect::<Option<Vec<u32>>>() else { return Ok(None) };
        let mut basis = Vec::new();
        let mut cur = vec![0u32; nvars];
        'walk: loop {
            let m = Monomial::from_exponents(&cur);
            if !lms.iter().any(|l| l.divides(&m)) {
                basis.push(m);
                if basis.len() > MAX_RANK {
                    return Ok(None);
                }
            }
            let mut i = 0;
            loop {
                if i == e {
                    break 'walk;
                }
                cur[i] += 1;
                if cur[i] < box_sizes[i] {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
        Ok(Some(GraphAlgebra {
            e,
            tops: sb,
            tails,
            basis,
        }))
    }

    /// Representative of `p` supported on `basis × C[w]`, or `None` when a
    /// reduction does not have the expected shape.
    fn normal_form(&self, p: &Poly, caps: &Caps) -> Result<Option<Poly>> {
        let mut p = p.clone();
        let mut out = Poly::zero(p.nvars());
        while !p.is_zero() {
            let (_, top, rest) = split_top(&p, self.e);
            let (rem, unit, cof) = self.tops.normal_form_with_certificate(&top, caps)?;
            if !(unit.is_constant() && !unit.is_zero()) {
                return Ok(None);
            }
            let inv = unit.constant_term().recip();
            // unit·top = Σ cof_i T_i + rem and T_i ≡ g_i + T_i modulo the graph
            out = &out + &rem.scale(&inv);
            p = rest;
            for (c, t) in cof.iter().zip(&self.tails) {
                p = &p + &c.checked_mul(t)?.scale(&inv);
            }
        }
        Ok(Some(out))
    }

    fn coordinates(&self, p: &Poly) -> Option<Vec<Poly>> {
        let n = p.nvars();
        let mut out = vec![Poly::zero(n); self.basis.len()];
        for (m, c) in p.terms() {
            let mut y = m.exponents().to_vec();
            let mut w = y.clone();
            y[self.e..].iter_mut().for_each(|x| *x = 0);
            w[..self.e].iter_mut().for_each(|x| *x = 0);
            let i = self.basis.iter().position(|b| b.exponents() == y.as_slice())?;
            out[i] = &out[i] + &Poly::monomial(n, Monomial::from_exponents(&w), c.clone());
        }
        Some(out)
    }
}

/// `det` of multiplication by `f` on `C[w][y]/(graph)`, an element of
/// `(f, graph) ∩ C[w]` by Cayley–Hamilton. `None` when the algebra is not
/// free on a small standard basis.
pub(crate) fn graph_norm(f: &Poly, graph: &[Poly], e: usize, caps: &Caps) -> Result<Option<Poly>> {
    let Some(alg) = GraphAlgebra::new(graph, e, caps)? else { return Ok(None) };
    let mut columns = Vec::with_capacity(alg.basis.len());
    for b in &alg.basis {
        let fb = f.mul_term(b, &num_traits::One::one());
        let Some(r) = alg.normal_form(&fb, caps)? else { return Ok(None) };
        let Some(col) = alg.coordinates(&r) else { return Ok(None) };
        columns.push(col);
    }
    let size = columns.len();
    let matrix: Vec<Vec<Poly>> = (0..size).map(|i| (0..size).map(|j| columns[j][i].clone()).collect()).collect();
    Ok(Some(poly_det(&matrix, f.nvars())))
}
