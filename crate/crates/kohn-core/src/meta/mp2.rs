use crate::error::{Error, Result};
use crate::localalg::{
    elimination_ideal_with, local_multiplicity_with, tuple_multiplicity_with, Caps, Filtration, LocalCertifier,
    MembershipCertificate,
};
use super::norm::graph_norm;
use crate::polyring::{rational_det, rational_inverse, LinearChange, Poly, RandomSource, Rational};
use num_traits::{One, Zero};
use serde::Serialize;

const PROC: &str = "MP2 triangular resolution";

/// `h_j(w_j, …, w_n)` with `h_j∘Γ ∈ I_j`, one per filtration stage.
///
/// Each `h_j` with `j` below the last stage is monic in `w_j`, so `degrees`
/// (the `w_j`-degrees) bound the lattice of the Jacobian extension while
/// `mu` holds the vanishing orders `ord_{w_j} h_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangularResolution {
    pub h: Vec<Poly>,
    pub mu: Vec<u32>,
    pub degrees: Vec<u32>,
    pub witnesses: Vec<MembershipCertificate>,
    pub gamma: Vec<Poly>,
    /// `mult(I_j, Γ_{j+1}, …, Γ_n)`, the finiteness hypotheses.
    pub stage_mults: Vec<u64>,
    /// `n·stage_mult_j·mult(I_j)`, the certified ceiling on `mu_j`.
    pub order_bounds: Vec<u64>,
}

impl TriangularResolution {
    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    /// `h_j∘Γ` (0-based `j`).
    pub fn composed(&self, j: usize) -> Result<Poly> {
        self.h[j].compose(&self.gamma)
    }

    /// Re-check supports, orders and witnesses.
    pub fn validate(&self) -> Result<()> {
        for (j, h) in self.h.iter().enumerate() {
            if h.support_vars().iter().any(|&v| v < j) {
                return Err(Error::verification(PROC, format!("h_{} depends on a leading variable", j + 1)));
            }
            if h.ord_in_variable(j)? != Some(self.mu[j]) {
                return Err(Error::verification(PROC, format!("ord of h_{} is not {}", j + 1, self.mu[j])));
            }
            let w = &self.witnesses[j];
            if w.target != self.composed(j)? || !w.verify() {
                return Err(Error::verification(PROC, format!("witness for h_{}∘Γ does not verify", j + 1)));
            }
        }
        Ok(())
    }
}

/// Coordinates `y = M·z` whose first `p` entries are the leading linear
/// components of `Γ`, so those components need no graph variable.
struct Frame {
    p: usize,
    n: usize,
    inverse: LinearChange,
}

impl Frame {
    fn new(gamma: &[Poly]) -> Frame {
        let n = gamma.len();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for g in gamma {
            if !(g.is_homogeneous() && g.total_degree() == 1) {
                break;
            }
            let row: Vec<Rational> = (0..n)
                .map(|i| g.coeff(&crate::polyring::Monomial::var(n, i)))
                .collect();
            if !independent(&rows, &row) {
                break;
            }
            rows.push(row);
        }
        let p = rows.len();
        for i in 0..n {
            if rows.len() == n {
                break;
            }
            let e: Vec<Rational> = (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect();
            if independent(&rows, &e) {
                rows.push(e);
            }
        }
        let inverse = LinearChange::new(rational_inverse(&rows).expect("completed basis")).expect("invertible");
        Frame { p, n, inverse }
    }

    /// Variables of the graph ring: `y_{p+1..n}` then `w_1..w_n`.
    fn nvars(&self) -> usize {
        2 * self.n - self.p
    }

    fn w(&self, i: usize) -> usize {
        self.n - self.p + i
    }

    /// `q(z)` rewritten in `y`, with `y_i = w_i` for `i < p`.
    fn embed(&self, q: &Poly) -> Result<Poly> {
        let in_y = self.inverse.apply(q)?;
        let map: Vec<usize> = (0..self.n)
            .map(|i| if i < self.p { self.w(i) } else { i - self.p })
            .collect();
        in_y.rename(self.nvars(), &map)
    }

    fn unembed(&self, q: &Poly) -> Result<Poly> {
        let map: Vec<usize> = (0..self.nvars())
            .map(|v| v.saturating_sub(self.n - self.p).min(self.n - 1))
            .collect();
        if q.support_vars().iter().any(|&v| v < self.n - self.p) {
            return Err(Error::verification(PROC, "eliminated variable survived"));
        }
        q.rename(self.n, &map)
    }
}

fn independent(rows: &[Vec<Rational>], row: &[Rational]) -> bool {
    if rows.len() >= row.len() {
        return false;
    }
    // rank test via a square completion is overkill here: Gram determinant
    let mut all = rows.to_vec();
    all.push(row.to_vec());
    let gram: Vec<Vec<Rational>> = all
        .iter()
        .map(|a| {
            all.iter()
                .map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();
    !rational_det(&gram).is_zero()
}

/// Pick the generator of least `ord_{w_j}` whose coefficient of the top
/// power of `w_j` is constant, made monic. With `allow_general` any
/// generator of finite order qualifies.
fn select(cands: &[Poly], j: usize, allow_general: bool) -> Result<Option<(Poly, u32, u32)>> {
    let mut best: Option<(u32, u32, usize, Poly)> = None;
    if allow_general {
        if let Some(c) = cands.iter().find(|c| c.is_constant() && !c.is_zero()) {
            // the stage ideal is the unit ideal
            return Ok(Some((Poly::one(c.nvars()), 0, 0)));
        }
    }
    for c in cands {
        let deg = c.degree_in(j);
        if deg == 0 {
            continue;
        }
        let Some(ord) = c.ord_in_variable(j)? else { continue };
        let lead = c.coefficient_in(j, deg);
        let monic = lead.is_constant();
        if !monic && !allow_general {
            continue;
        }
        let h = if monic {
            c.scale(&lead.constant_term().recip())
        } else {
            c.primitive()
        };
        let key = (ord, if monic { 0 } else { 1 }, deg as usize);
        if best.as_ref().is_none_or(|b| (key.0, key.1, key.2) < (b.0, b.1, b.2)) {
            best = Some((key.0, key.1, key.2, h));
        }
    }
    Ok(best.map(|(ord, _, deg, h)| (h, ord, deg as u32)))
}

/// Elimination of the graph ideals `I_j + (w − Γ(z))`, one Weierstrass
/// shaped generator per stage, and a local witness `h_j∘Γ ∈ I_j`.
pub fn mp2_triangular_resolution(
    gamma: &[Poly],
    filtration: &Filtration,
    rng: &mut RandomSource,
    caps: &Caps,
) -> Result<TriangularResolution> {
    let n = gamma.len();
    let k = filtration.len();
    if k == 0 || k > n {
        return Err(Error::domain(PROC, format!("filtration length {k} outside 1..={n}")));
    }
    if let Some(g) = gamma.iter().find(|g| g.nvars() != n || !g.constant_term().is_zero()) {
        return Err(Error::domain(PROC, format!("Γ component {g} must vanish at 0 in {n} variables")));
    }
    let frame = Frame::new(gamma);
    let graph: Vec<Poly> = (frame.p..n)
        .map(|i| {
            let w = Poly::var(frame.nvars(), frame.w(i))?;
            w.checked_sub(&frame.embed(&gamma[i])?)
        })
        .collect::<Result<_>>()?;

    let mut out = TriangularResolution {
        h: Vec::new(),
        mu: Vec::new(),
        degrees: Vec::new(),
        witnesses: Vec::new(),
        gamma: gamma.to_vec(),
        stage_mults: Vec::new(),
        order_bounds: Vec::new(),
    };
    for j in 1..=k {
        let stage = filtration.stage(j).expect("in range");
        let mut hyp = stage.to_vec();
        hyp.extend(gamma[j..].iter().cloned());
        let Some(stage_mult) = local_multiplicity_with(&hyp, caps)?.finite() else {
            return Err(Error::domain(PROC, format!("mult(I_{j}, Γ_{}..Γ_n) is infinite", j + 1)));
        };
        let Some(ideal_mult) = tuple_multiplicity_with(stage, n, rng, caps)?.value.finite() else {
            return Err(Error::domain(PROC, format!("mult(I_{j}) is infinite")));
        };

        let mut gens: Vec<Poly> = stage.iter().map(|f| frame.embed(f)).collect::<Result<_>>()?;
        gens.extend(graph.iter().cloned());
        let keep_from = frame.w(j - 1);
        let mut picked = None;
        if j == 1 && j < k && stage.len() == 1 {
            // a principal first stage: the norm of f along the graph lies in
            // the elimination ideal and avoids a Groebner basis
            if let Some(q) = graph_norm(&gens[0], &graph, keep_from, caps)? {
                if !q.is_zero() {
                    picked = select(&[frame.unembed(&q.primitive())?], j - 1, j == k)?;
                }
            }
        }
        if picked.is_none() {
            let elim = elimination_ideal_with(&gens, keep_from, caps)?;
            let cands: Vec<Poly> = elim.iter().map(|q| frame.unembed(q)).collect::<Result<_>>()?;
            picked = select(&cands, j - 1, j == k)?;
        }
        let Some((h, ord, deg)) = picked else {
            return Err(Error::domain(
                PROC,
                format!("no elimination generator of stage {j} is monic in w_{j}; coordinates are not generic"),
            ));
        };
        let bound = (n as u64).saturating_mul(stage_mult).saturating_mul(ideal_mult);
        if ord as u64 > bound {
            return Err(Error::verification(PROC, format!("ord_w{j} h_{j} = {ord} exceeds n·μ_j·mult(I_j) = {bound}")));
        }
        let target = h.compose(gamma)?;
        let witness = LocalCertifier::new(stage, caps)?.certify(&target)?;
        if !witness.verify() {
            return Err(Error::verification(PROC, format!("witness for h_{j}∘Γ ∈ I_{j} fails")));
        }
        out.h.push(h);
        out.mu.push(ord);
        out.degrees.push(deg);
        out.witnesses.push(witness);
        out.stage_mults.push(stage_mult);
        out.order_bounds.push(bound);
    }
    Ok(out)
}
