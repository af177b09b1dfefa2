//! The worked example on the unperturbed squares `ψ = (z1², z2², z3²)` in
//! `C³`, replayed step by step with every intermediate recomputed.
//!
//! Only three values are hard-coded: `mult ψ = 8`, `mult J_1 = 3` and the
//! ceiling 20 on `dim O/(J_1, ψ_2, ψ_3)`. Shapes are checked up to the
//! scalar that is recorded in the report.

use crate::error::{Error, Result};
use crate::kohn::verify_trace;
use crate::localalg::{local_multiplicity_with, macaulay_multiplicity, tuple_multiplicity_with, Caps};
use crate::meta::{iterate_step, mp1_with_change, run_to_unit, PipelineState, RunReport};
use crate::polyring::{jacobian_det, linear_combination, poly, rat, LinearChange, Poly, RandomSource, Rational};
use serde::Serialize;

const PROC: &str = "worked example";

/// One checked intermediate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepCheck {
    pub step: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Section8Report {
    pub seed: u64,
    pub checks: Vec<StepCheck>,
    /// `J_1 = scalar·z1z2z3`.
    #[serde(with = "crate::polyring::rational_string")]
    pub j1_scalar: Rational,
    /// `dim O/(J_1, ψ_2, ψ_3)` from the standard basis and from truncations.
    pub colength_local: u64,
    pub colength_macaulay: u64,
    /// `J_2 = scalar·(u2u3 − (u2+u3)u1)` in the original coordinates.
    #[serde(with = "crate::polyring::rational_string")]
    pub j2_scalar: Rational,
    /// `mult(f_1, J_2, ψ_3)` in these coordinates. Without the higher order
    /// terms it is infinite: all three vanish on the line `(0, t, 0)`.
    pub j2_multiplicity: Option<u64>,
    pub f1: Poly,
    /// The full run, when termination was requested and reached.
    pub termination: Option<RunReport>,
    pub passed: bool,
}

impl Section8Report {
    pub fn failed_steps(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.step.as_str()).collect()
    }
}

struct Checks(Vec<StepCheck>);

impl Checks {
    fn push(&mut self, step: &str, expected: impl ToString, actual: impl ToString, passed: bool) {
        self.0.push(StepCheck {
            step: step.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
            passed,
        });
    }

    fn shape(&mut self, step: &str, p: &Poly, shape: &Poly) -> Rational {
        let s = p.is_scalar_multiple_of(shape);
        let actual = match &s {
            Some(s) => format!("{s}·({shape})"),
            None => p.to_string(),
        };
        self.push(step, format!("c·({shape})"), actual, s.is_some());
        s.unwrap_or_else(num_traits::Zero::zero)
    }
}

fn finite(m: crate::localalg::Multiplicity, what: &str) -> Result<u64> {
    m.finite().ok_or_else(|| Error::domain(PROC, format!("{what} has infinite multiplicity")))
}

/// Steps 0 to 2.1 by default; with `terminate` also the full run to the
/// unit multiplier.
pub fn example_section8(seed: u64, caps: &Caps, terminate: bool) -> Result<Section8Report> {
    let n = 3;
    let p = |s: &str| poly(s, n);
    let mut rng = RandomSource::new(seed);
    let mut checks = Checks(Vec::new());
    let psi = vec![p("z1^2"), p("z2^2"), p("z3^2")];

    // Step 0
    let mu = finite(local_multiplicity_with(&psi, caps)?, "ψ")?;
    checks.push("step 0: mult ψ", 8, mu, mu == 8);
    let j1 = jacobian_det(&psi, &[0, 1, 2])?;
    let j1_scalar = checks.shape("step 0: J_1", &j1, &p("z1*z2*z3"));
    let mult_j1 = finite(tuple_multiplicity_with(std::slice::from_ref(&j1), n, &mut rng, caps)?.value, "J_1")?;
    checks.push("step 0: mult J_1", 3, mult_j1, mult_j1 == 3);

    // Step 1.1: ψ_j = z_j² − z_1² from the coefficients (−1, 1, 0), (−1, 0, 1)
    let psi2 = linear_combination(&psi, &[rat(-1), rat(1), rat(0)])?;
    let psi3 = linear_combination(&psi, &[rat(-1), rat(0), rat(1)])?;
    let colength_gens = vec![j1.clone(), psi2.clone(), psi3.clone()];
    let colength_local = finite(local_multiplicity_with(&colength_gens, caps)?, "(J_1, ψ_2, ψ_3)")?;
    let colength_macaulay = macaulay_multiplicity(&colength_gens, caps.degree)?
        .ok_or_else(|| Error::resource(PROC, "Macaulay degree for (J_1, ψ_2, ψ_3)", caps.degree))?;
    checks.push(
        "step 1.1: dim O/(J_1, ψ_2, ψ_3)",
        "≤ 20, equal on both paths",
        format!("{colength_local} (standard basis), {colength_macaulay} (Macaulay)"),
        colength_local == colength_macaulay && colength_local <= 20,
    );

    // Step 1.2: u = (z1, z2 + z1, z3 + z1)
    let u = LinearChange::from_integers(&[vec![1, 0, 0], vec![1, 1, 0], vec![1, 0, 1]])?;
    checks.shape("step 1.2: J_1 in u", &u.apply(&j1)?, &p("z1*(z2 + z1)*(z3 + z1)"));
    let gamma1 = vec![p("z1"), psi2.clone(), psi3.clone()];
    let mult_gamma1 = finite(local_multiplicity_with(&gamma1, caps)?, "Γ_1")?;
    checks.push("step 1.2: mult(z1, ψ_2, ψ_3)", "finite", mult_gamma1, true);

    // Steps 1.3 and 1.4 through the elimination route
    let (state, _) = PipelineState::start(&psi, &mut rng, caps)?;
    let state = iterate_step(state, &psi, &mut rng, caps)?;
    let f1 = state.f[0].poly.clone();
    let mult_f1_psi = finite(local_multiplicity_with(&[f1.clone(), psi2.clone(), psi3.clone()], caps)?, "(f_1, ψ_2, ψ_3)")?;
    let ceiling = 3 * 8u64.pow(4);
    checks.push(
        "step 1.3: mult(f_1, ψ_2, ψ_3)",
        format!("≤ {ceiling}"),
        mult_f1_psi,
        mult_f1_psi <= ceiling,
    );
    let trace_ok = verify_trace(&state.trace).ok;
    checks.push("step 1.4: trace to f_1", "verifies", trace_ok, trace_ok);

    // Step 2.1: ℓ = U⁻¹·z for u = (z1+z2+z3, z2+z1, z3+z1), so ℓ_1 = z2 + z3 − z1
    let u = LinearChange::from_integers(&[vec![1, 1, 1], vec![1, 1, 0], vec![1, 0, 1]])?;
    let identity = vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]];
    let sel = mp1_with_change(&[f1.clone()], &[psi2, psi3], u.inverse(), identity, &mut rng, caps)?;
    let j2_scalar = checks.shape("step 2.1: J_2", &sel.jacobian, &p("z2*z3 - (z2 + z3)*z1"));
    checks.shape(
        "step 2.1: J_2 in z",
        &u.apply(&sel.jacobian)?,
        &p("(z2 + z1)*(z3 + z1) - (2*z1 + z2 + z3)*(z1 + z2 + z3)"),
    );
    let j2_multiplicity = sel.mult_fj_psi;

    // Step 3.3
    let termination = if terminate {
        let out = run_to_unit(&psi, &mut RandomSource::new(seed), caps)?;
        let reached = out.unit.poly.is_unit() && out.report.verified && out.report.bound.passed();
        checks.push("step 3.3: termination", "verified unit", out.report.unit_order.clone(), reached);
        Some(out.report)
    } else {
        None
    };

    let passed = checks.0.iter().all(|c| c.passed);
    Ok(Section8Report {
        seed,
        checks: checks.0,
        j1_scalar,
        colength_local,
        colength_macaulay,
        j2_scalar,
        j2_multiplicity,
        f1,
        termination,
        passed,
    })
}
