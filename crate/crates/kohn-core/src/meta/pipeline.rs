use super::mp1::{mp1_select_partial_jacobian, MAX_DRAWS};
use super::mp2::mp2_triangular_resolution;
use super::mp3::mp3_jacobian_extension;
use crate::bounds::{compare_achieved_with_cap, BoundReport, DIGIT_CAP};
use crate::error::{Error, Result};
use crate::kohn::{verify_trace, Multiplier, Trace};
use crate::localalg::{siu_select_with, tuple_multiplicity_with, Caps, Filtration};
use crate::polyring::{LinearChange, Poly, RandomSource};
use num_bigint::BigUint;
use serde::Serialize;

/// What one stage certified, for the run report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub k: usize,
    pub siu_multiplicity: u64,
    pub siu_bound: u64,
    pub mp1_draws: usize,
    pub mult_fj: Option<u64>,
    pub bound_fj: u64,
    pub mult_fj_psi: Option<u64>,
    pub bound_fj_psi: u64,
    pub attempts: usize,
    pub orders: Vec<u32>,
    pub degrees: Vec<u32>,
    pub order_bounds: Vec<u64>,
    pub p1_steps: usize,
    pub p2_steps: usize,
    pub max_root: u32,
    /// `mult(g_1, …, g_{k+1})` against `n^{k+3} μ^{n+k+3} ν^{(n-k)(n+1)}`.
    pub multiplicity: u64,
    pub multiplicity_bound: String,
}

/// State between stages: the multipliers `f = (f_1, …, f_k)` with their
/// certified multiplicity, and the trace that derived them.
#[derive(Clone, Debug)]
pub struct PipelineState {
    pub n: usize,
    pub k: usize,
    /// Coordinates of the last stage, `ℓ = L·z`.
    pub coords: LinearChange,
    pub psi: Vec<Poly>,
    pub f: Vec<Multiplier>,
    /// `mult f` (1 for the empty tuple) and `ν = mult F`.
    pub mult: u64,
    pub nu: u64,
    pub stages: Vec<StageRecord>,
    pub trace: Trace,
    /// Set once some derived multiplier is a unit.
    pub unit: Option<Multiplier>,
}

impl PipelineState {
    /// Register `big_f` as pre-multipliers and certify `ν`.
    pub fn start(big_f: &[Poly], rng: &mut RandomSource, caps: &Caps) -> Result<(PipelineState, Vec<Multiplier>)> {
        let n = big_f.first().ok_or(Error::Empty("pre-multipliers"))?.nvars();
        if n == 0 {
            return Err(Error::domain("run_to_unit", "germs need at least one variable"));
        }
        let Some(nu) = tuple_multiplicity_with(big_f, n, rng, caps)?.value.finite() else {
            return Err(Error::domain("run_to_unit", "pre-multipliers have infinite multiplicity"));
        };
        let mut trace = Trace::new();
        let pre = big_f
            .iter()
            .map(|p| trace.register_premultiplier(p))
            .collect::<Result<Vec<_>>>()?;
        let state = PipelineState {
            n,
            k: 0,
            coords: LinearChange::identity(n),
            psi: Vec::new(),
            f: Vec::new(),
            mult: 1,
            nu,
            stages: Vec::new(),
            trace,
            unit: None,
        };
        Ok((state, pre))
    }

    fn f_polys(&self) -> Vec<Poly> {
        self.f.iter().map(|m| m.poly.clone()).collect()
    }
}

/// `n^{k+3} μ^{n+k+3} ν^{(n-k)(n+1)}`
pub fn eq71_bound(n: usize, k: usize, mu: u64, nu: u64) -> BigUint {
    let (n, k) = (n as u32, k as u32);
    BigUint::from(n).pow(k + 3) * BigUint::from(mu).pow(n + k + 3) * BigUint::from(nu).pow((n - k) * (n + 1))
}

/// One stage `k → k+1`: Siu selection, MP1, MP2 with filtration
/// `(f_1) ⊆ … ⊆ (f_1..f_k) ⊆ (f_1..f_k, J)`, then MP3.
pub fn iterate_step(
    mut state: PipelineState,
    big_f: &[Poly],
    rng: &mut RandomSource,
    caps: &Caps,
) -> Result<PipelineState> {
    let (n, k) = (state.n, state.k);
    if k >= n {
        return Err(Error::domain("iterate_step", "all stages are done"));
    }
    let stage = format!("stage k = {k}");
    let ctx = |e: Error| e.in_stage(&stage);
    let f = state.f_polys();
    let siu = siu_select_with(&f, big_f, n - k, rng, caps).map_err(ctx)?;
    let siu_mult = siu.multiplicity.finite().unwrap_or(u64::MAX);

    let mut attempt = 0;
    let (sel, res) = loop {
        attempt += 1;
        let sel = mp1_select_partial_jacobian(&f, &siu.combinations, rng, caps).map_err(ctx)?;
        if k == 0 && sel.jacobian.is_unit() {
            break (sel, None);
        }
        let mut gens = f.clone();
        gens.push(sel.jacobian.clone());
        match mp2_triangular_resolution(&sel.gamma, &Filtration::from_prefixes(&gens), rng, caps) {
            Ok(res) => break (sel, Some(res)),
            Err(Error::Domain { .. }) if attempt < MAX_DRAWS => continue,
            Err(e) => return Err(ctx(e)),
        }
    };

    let psi: Vec<Multiplier> = sel
        .psi
        .iter()
        .map(|p| state.trace.register_premultiplier(p))
        .collect::<Result<_>>()?;
    let mut record = StageRecord {
        k,
        siu_multiplicity: siu_mult,
        siu_bound: siu.bound,
        mp1_draws: sel.draws,
        mult_fj: sel.mult_fj,
        bound_fj: sel.bound_fj,
        mult_fj_psi: sel.mult_fj_psi,
        bound_fj_psi: sel.bound_fj_psi,
        attempts: attempt,
        orders: Vec::new(),
        degrees: Vec::new(),
        order_bounds: Vec::new(),
        p1_steps: 0,
        p2_steps: 0,
        max_root: 0,
        multiplicity: 0,
        multiplicity_bound: String::new(),
    };
    state.coords = sel.change.clone();
    state.psi = sel.psi.clone();

    let Some(res) = res else {
        // at k = 0 the Jacobian of the pre-multipliers is already a unit
        let u = state.trace.apply_p1(&psi).map_err(ctx)?;
        record.p1_steps = 1;
        state.stages.push(record);
        state.unit = Some(u);
        return Ok(state);
    };

    let mut decomposed = Vec::with_capacity(k);
    for j in 0..k {
        let g = res.composed(j)?;
        let m = state
            .trace
            .apply_p2_certified(&g, &state.f[..=j], 1, &res.witnesses[j])
            .map_err(ctx)?;
        decomposed.push(m);
    }
    let ext = mp3_jacobian_extension(&res, &state.f, &decomposed, &psi, &mut state.trace).map_err(ctx)?;
    let mut g = decomposed;
    g.push(ext.output.clone());

    let g_polys: Vec<Poly> = g.iter().map(|m| m.poly.clone()).collect();
    let Some(mult) = tuple_multiplicity_with(&g_polys, n, rng, caps).map_err(ctx)?.value.finite() else {
        return Err(ctx(Error::verification("iterate_step", "new multipliers have infinite multiplicity")));
    };
    let bound = eq71_bound(n, k, state.mult, state.nu);
    if BigUint::from(mult) > bound {
        return Err(ctx(Error::verification(
            "iterate_step",
            format!("mult(g) = {mult} exceeds n^(k+3) μ^(n+k+3) ν^((n-k)(n+1)) = {bound}"),
        )));
    }
    record.orders = res.mu.clone();
    record.degrees = res.degrees.clone();
    record.order_bounds = res.order_bounds.clone();
    record.p1_steps = ext.p1_steps;
    record.p2_steps = ext.p2_steps + k;
    record.max_root = ext.max_root.max(u32::from(k > 0));
    record.multiplicity = mult;
    record.multiplicity_bound = bound.to_string();
    state.stages.push(record);
    state.unit = g.iter().find(|m| m.poly.is_unit()).cloned();
    state.f = g;
    state.k = k + 1;
    state.mult = mult;
    Ok(state)
}

/// Final P2/P1 steps and the order comparison.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub n: usize,
    pub nu: u64,
    pub stages: Vec<StageRecord>,
    /// Root orders of `z_j` against the last tuple (empty on early exit).
    pub final_roots: Vec<u32>,
    pub steps: usize,
    pub p1_steps: usize,
    pub p2_steps: usize,
    pub max_root_order: u32,
    pub verified: bool,
    pub unit_order: String,
    pub bound: BoundReport,
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub trace: Trace,
    pub unit: Multiplier,
    pub report: RunReport,
}

/// Drive the stages to the unit multiplier and compare its order with the
/// closed-form bound.
pub fn run_to_unit(big_f: &[Poly], rng: &mut RandomSource, caps: &Caps) -> Result<RunOutcome> {
    run_to_unit_with_cap(big_f, rng, caps, DIGIT_CAP)
}

pub fn run_to_unit_with_cap(big_f: &[Poly], rng: &mut RandomSource, caps: &Caps, digit_cap: u64) -> Result<RunOutcome> {
    let (mut state, _) = PipelineState::start(big_f, rng, caps)?;
    let n = state.n;
    while state.k < n && state.unit.is_none() {
        state = iterate_step(state, big_f, rng, caps)?;
    }
    let mut final_roots = Vec::new();
    let unit = match state.unit.clone() {
        Some(u) => u,
        None => {
            let mut zs = Vec::with_capacity(n);
            for j in 0..n {
                let z = Poly::var(n, j)?;
                let m = state.trace.apply_p2(&z, &state.f, rng, caps).map_err(|e| e.in_stage("final radical"))?;
                final_roots.push(state.trace.node(m.node).and_then(|t| t.r).unwrap_or(0));
                zs.push(m);
            }
            state.trace.apply_p1(&zs)?
        }
    };
    if !unit.poly.is_unit() {
        return Err(Error::verification("run_to_unit", "final multiplier is not a unit"));
    }
    let check = verify_trace(&state.trace);
    if !check.ok {
        return Err(Error::verification("run_to_unit", format!("trace nodes {:?} fail", check.failures)));
    }
    let bound = compare_achieved_with_cap(n as u64, state.nu, &unit.order, digit_cap)?;
    let report = RunReport {
        n,
        nu: state.nu,
        stages: state.stages,
        final_roots,
        steps: check.steps,
        p1_steps: check.p1_steps,
        p2_steps: check.p2_steps,
        max_root_order: check.max_root_order,
        verified: check.ok,
        unit_order: unit.order.to_string(),
        bound,
    };
    Ok(RunOutcome {
        trace: state.trace,
        unit,
        report,
    })
}
