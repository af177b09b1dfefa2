use kohn_core::kohn::verify_trace;
use kohn_core::localalg::Filtration;
use kohn_core::meta::*;
use kohn_core::polyring::{poly, ratio};
use kohn_core::{Caps, Poly, RandomSource};

fn polys(list: &[&str], n: usize) -> Vec<Poly> {
    list.iter().map(|s| poly(s, n)).collect()
}

#[test]
fn revlex_runs_first_coordinate_fastest() {
    let l = revlex_lattice(&[2, 3]);
    assert_eq!(l.len(), 6);
    assert_eq!(l[0], vec![1, 1]);
    assert_eq!(l[1], vec![2, 1]);
    assert_eq!(l[2], vec![1, 2]);
    assert_eq!(l[5], vec![2, 3]);
    assert_eq!(revlex_lattice(&[]), vec![Vec::<u32>::new()]);
}

#[test]
fn mp1_on_squares_matches_the_worked_example() {
    let mut rng = RandomSource::new(0);
    let psi = polys(&["z1^2", "z2^2", "z3^2"], 3);
    let sel = mp1_select_partial_jacobian(&[], &psi, &mut rng, &Caps::default()).unwrap();
    assert!(sel.certified);
    assert_eq!(sel.mult_f_psi, 8);
    assert_eq!(sel.mult_fj, Some(3));
    assert!(sel.mult_fj.unwrap() <= sel.bound_fj);
    assert_eq!(sel.bound_fj, 24);
    assert!(sel.jacobian.is_scalar_multiple_of(&poly("z1*z2*z3", 3)).is_some());
}

#[test]
fn mp1_linear_psi_gives_a_unit() {
    let mut rng = RandomSource::new(1);
    let sel = mp1_select_partial_jacobian(&[poly("z1", 3)], &polys(&["z2", "z3"], 3), &mut rng, &Caps::default())
        .unwrap();
    assert!(sel.certified);
    // J is a unit, so (f, J) is the unit ideal
    assert_eq!(sel.mult_fj, Some(0));
}

#[test]
fn mp2_trivial_examples() {
    let caps = Caps::default();
    let mut rng = RandomSource::new(0);
    let gamma = polys(&["z1", "z2"], 2);
    let res = mp2_triangular_resolution(&gamma, &Filtration::from_prefixes(&[poly("z1", 2)]), &mut rng, &caps).unwrap();
    assert_eq!(res.h, vec![poly("z1", 2)]);
    assert_eq!(res.mu, vec![1]);
    res.validate().unwrap();

    let gamma = polys(&["z1", "z2^2"], 2);
    let res = mp2_triangular_resolution(&gamma, &Filtration::from_prefixes(&[poly("z1", 2)]), &mut rng, &caps).unwrap();
    assert_eq!(res.h, vec![poly("z1", 2)]);

    // a curve image: (z1 z2) under (z1, z2^2 + z1) eliminates to w1·(w2 - w1)
    let gamma = polys(&["z1", "z2^2 + z1"], 2);
    let f = [poly("z1*z2", 2), poly("z2^3 - z1^2", 2)];
    let res = mp2_triangular_resolution(&gamma, &Filtration::from_prefixes(&f), &mut rng, &caps).unwrap();
    res.validate().unwrap();
    assert_eq!(res.len(), 2);
    assert!(res.h[1].support_vars().iter().all(|&v| v == 1));
    for (j, h) in res.h.iter().enumerate() {
        assert!(res.mu[j] as u64 <= res.order_bounds[j]);
        assert!(h.compose(&gamma).unwrap() == res.witnesses[j].target);
    }
}

#[test]
fn linear_system_ends_in_one_p1_step() {
    let caps = Caps::default();
    for n in 1..=3 {
        let mut rng = RandomSource::new(n as u64);
        let f: Vec<Poly> = (0..n).map(|i| Poly::var(n, i).unwrap()).collect();
        let out = run_to_unit(&f, &mut rng, &caps).unwrap();
        assert_eq!(out.unit.order, ratio(1, 4));
        assert_eq!(out.report.p1_steps, 1);
        assert_eq!(out.report.p2_steps, 0);
        assert!(out.report.bound.passed());
    }
}

#[test]
fn single_square_terminates() {
    let caps = Caps::default();
    let mut rng = RandomSource::new(0);
    let out = run_to_unit(&[poly("z1^2", 1)], &mut rng, &caps).unwrap();
    assert!(out.unit.poly.is_unit());
    assert_eq!(out.report.final_roots, vec![2]);
    assert_eq!(out.unit.order, ratio(1, 16));
    assert!(verify_trace(&out.trace).ok);
    assert!(out.report.bound.passed());
}

#[test]
fn first_stage_on_squares() {
    let caps = Caps::default();
    let mut rng = RandomSource::new(0);
    let f = polys(&["z1^2", "z2^2", "z3^2"], 3);
    let (state, _) = PipelineState::start(&f, &mut rng, &caps).unwrap();
    assert_eq!(state.nu, 8);
    let state = iterate_step(state, &f, &mut rng, &caps).unwrap();
    assert_eq!(state.k, 1);
    let rec = &state.stages[0];
    assert_eq!(rec.mult_fj, Some(3));
    assert_eq!(rec.max_root, 1);
    assert!(rec.multiplicity > 0);
    assert!(rec.orders[0] as u64 <= rec.order_bounds[0]);
    assert!(verify_trace(&state.trace).ok);
}

#[test]
fn plane_curve_pair_runs_to_the_unit() {
    let caps = Caps::default();
    let mut rng = RandomSource::new(7);
    let f = polys(&["z1^2", "z2^3"], 2);
    let out = run_to_unit(&f, &mut rng, &caps).unwrap();
    eprintln!("{}", serde_json::to_string_pretty(&out.report).unwrap());
    assert!(out.unit.poly.is_unit());
    assert!(verify_trace(&out.trace).ok);
    assert!(out.report.bound.passed());
    for s in &out.report.stages {
        assert!(s.max_root as usize <= s.k + 1);
    }
}
