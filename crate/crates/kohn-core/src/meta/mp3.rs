use super::mp2::TriangularResolution;
use crate::error::{Error, Result};
use crate::kohn::{Multiplier, Trace};
use crate::localalg::MembershipCertificate;
use crate::polyring::{jacobian_det, Poly, Rational};
use serde::Serialize;
use std::collections::HashMap;

const PROC: &str = "MP3 Jacobian extension";

/// Result of MP3: `output = scalar·(h_{k+1}∘Γ)` as a multiplier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extension {
    #[serde(skip)]
    pub output: Multiplier,
    #[serde(with = "crate::polyring::rational_string")]
    pub scalar: Rational,
    pub lattice: Vec<u32>,
    pub p1_steps: usize,
    pub p2_steps: usize,
    pub max_root: u32,
}

/// Lattice points of `∏ {1..sizes_j}` in increasing reverse-lexicographic
/// order (the first coordinate runs fastest).
pub fn revlex_lattice(sizes: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if sizes.contains(&0) {
        return out;
    }
    let mut cur = vec![1u32; sizes.len()];
    loop {
        out.push(cur.clone());
        let mut i = 0;
        loop {
            if i == cur.len() {
                return out;
            }
            if cur[i] < sizes[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 1;
            i += 1;
        }
    }
}

/// Build `h_{k+1}∘Γ` (up to a nonzero constant) from the multipliers
/// `ideal = (f_1, …, f_k)`, the decomposed multipliers `decomposed[j] =
/// h_j∘Γ` and the pre-multipliers `psi = (Γ_{k+1}, …, Γ_n)`.
///
/// Every lattice point `L` contributes one P1 step `J_L` and one P2 step
/// for `(A_L h_{k+1})∘Γ` with root `m_L + 1`, certified from the witness
/// `u·h_{k+1}∘Γ = Σ a_i f_i + b·J` and the factorization
/// `J_L = s·(∏ (∂^{ℓ_i} h_i)^{m_i} h_{k+1}^{m_L})∘Γ · J`.
pub fn mp3_jacobian_extension(
    resolution: &TriangularResolution,
    ideal: &[Multiplier],
    decomposed: &[Multiplier],
    psi: &[Multiplier],
    trace: &mut Trace,
) -> Result<Extension> {
    let gamma = &resolution.gamma;
    let n = gamma.len();
    let k = ideal.len();
    if resolution.len() != k + 1 || decomposed.len() != k || psi.len() != n - k {
        return Err(Error::domain(PROC, format!("shapes do not fit stage k = {k} in {n} variables")));
    }
    for (p, g) in psi.iter().zip(&gamma[k..]) {
        if p.poly != *g {
            return Err(Error::domain(PROC, "pre-multipliers differ from the tail of Γ"));
        }
    }
    for (j, d) in decomposed.iter().enumerate() {
        if d.poly != resolution.composed(j)? {
            return Err(Error::domain(PROC, format!("decomposed multiplier {} is not h_{}∘Γ", j + 1, j + 1)));
        }
    }
    for j in 0..k {
        if !resolution.h[j].coefficient_in(j, resolution.degrees[j]).is_constant() {
            return Err(Error::domain(PROC, format!("h_{} is not monic in w_{}", j + 1, j + 1)));
        }
    }
    let witness = &resolution.witnesses[k];
    let ideal_polys: Vec<Poly> = ideal.iter().map(|m| m.poly.clone()).collect();
    let jac = jacobian_det(gamma, &(0..n).collect::<Vec<_>>())?;
    let mut expected = ideal_polys.clone();
    expected.push(jac.clone());
    if witness.generators != expected {
        return Err(Error::domain(PROC, "last witness is not over (f_1, …, f_k, J)"));
    }
    let top = resolution.composed(k)?;
    let (a, b) = witness.cofactors.split_at(k);
    let b = &b[0];

    // (∂^ℓ h_j)∘Γ, built on demand
    let mut factors: HashMap<(usize, u32), Poly> = HashMap::new();
    let mut factor = |j: usize, l: u32| -> Result<Poly> {
        if let Some(p) = factors.get(&(j, l)) {
            return Ok(p.clone());
        }
        let p = resolution.h[j].nth_derivative(j, l)?.compose(gamma)?;
        factors.insert((j, l), p.clone());
        Ok(p)
    };

    let sizes: Vec<u32> = resolution.degrees[..k].to_vec();
    let lattice = revlex_lattice(&sizes);
    let mut done: HashMap<Vec<u32>, Multiplier> = HashMap::new();
    let (mut p1_steps, mut p2_steps, mut max_root) = (0, 0, 0);
    let mut last: Option<Multiplier> = None;
    for l in &lattice {
        let mut inputs: Vec<Multiplier> = Vec::with_capacity(n);
        for j in 0..k {
            if l[j] > 1 {
                let mut lj: Vec<u32> = sizes[..j].to_vec();
                lj.push(l[j] - 1);
                lj.extend_from_slice(&l[j + 1..]);
                inputs.push(done[&lj].clone());
            } else {
                inputs.push(decomposed[j].clone());
            }
        }
        inputs.extend(psi.iter().cloned());
        let jl = trace.apply_p1(&inputs)?;
        p1_steps += 1;

        let m_l = l.iter().filter(|&&x| x > 1).count() as u32;
        let mut m_i = Vec::with_capacity(k);
        let mut seen = 0u32;
        for &x in l {
            m_i.push(1 + seen);
            if x > 1 {
                seen += 1;
            }
        }
        let ds: Vec<Poly> = (0..k).map(|j| factor(j, l[j])).collect::<Result<_>>()?;
        let mut a_l = Poly::one(n);
        let mut r_hat = top.pow(m_l);
        let mut w = Poly::one(n);
        for j in 0..k {
            a_l = a_l.checked_mul(&ds[j])?;
            r_hat = r_hat.checked_mul(&ds[j].pow(m_i[j]))?;
            w = w.checked_mul(&ds[j].pow(m_l + 1 - m_i[j]))?;
        }
        let Some(s) = jl.poly.is_scalar_multiple_of(&r_hat.checked_mul(&jac)?) else {
            return Err(Error::verification(PROC, format!("J_L does not factor at L = {l:?}")));
        };
        let target = a_l.checked_mul(&top)?;
        let r = m_l + 1;
        if r as usize > k + 1 {
            return Err(Error::verification(PROC, format!("root order {r} exceeds k+1 at L = {l:?}")));
        }
        let x = a_l.pow(r).checked_mul(&top.pow(m_l))?;
        let mut cofactors: Vec<Poly> = a.iter().map(|ai| ai.checked_mul(&x)).collect::<Result<_>>()?;
        cofactors.push(b.checked_mul(&w)?.scale(&s.recip()));
        let mut generators = ideal_polys.clone();
        generators.push(jl.poly.clone());
        let cert = MembershipCertificate {
            unit: witness.unit.clone(),
            cofactors,
            target: target.pow(r),
            generators,
        };
        let mut p2_inputs = ideal.to_vec();
        p2_inputs.push(jl);
        let out = trace
            .apply_p2_certified(&target, &p2_inputs, r, &cert)
            .map_err(|e| e.in_stage(&format!("lattice point {l:?}")))?;
        p2_steps += 1;
        max_root = max_root.max(r);
        done.insert(l.clone(), out.clone());
        last = Some(out);
    }
    let bound: u64 = sizes.iter().map(|&s| s as u64).product();
    if p1_steps as u64 > bound || p2_steps as u64 > bound {
        return Err(Error::verification(PROC, "more steps than lattice points"));
    }
    let output = last.ok_or(Error::Empty("MP3 lattice"))?;
    let Some(scalar) = output.poly.is_scalar_multiple_of(&top) else {
        return Err(Error::verification(PROC, "last output is not a multiple of h_{k+1}∘Γ"));
    };
    Ok(Extension {
        output,
        scalar,
        lattice: sizes,
        p1_steps,
        p2_steps,
        max_root,
    })
}
