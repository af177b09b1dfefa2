use kohn_core::kohn::*;
use kohn_core::polyring::{poly, ratio};
use kohn_core::{Caps, Poly, RandomSource};
use proptest::prelude::*;

fn oracle_in_monomial_ideal(p: &Poly, gens: &[Poly]) -> bool {
    // gens are single monomials; membership is termwise divisibility
    p.terms().all(|(m, _)| gens.iter().any(|g| g.terms().next().unwrap().0.divides(m)))
}

#[test]
fn premultipliers() {
    let mut t = Trace::new();
    let m = t.register_premultiplier(&poly("z1^2", 1)).unwrap();
    assert_eq!(m.order, ratio(1, 2));
    let psi1 = t.register_premultiplier(&poly("z1^2", 3)).unwrap();
    assert_eq!(psi1.order, ratio(1, 2));
    assert!(t.register_premultiplier(&poly("1", 1)).is_err());
    assert!(t.register_premultiplier(&poly("z1 + 2", 1)).is_err());
    assert_eq!(t.premultipliers().len(), 2);
}

#[test]
fn p1_examples() {
    let mut t = Trace::new();
    let zs: Vec<_> = (1..=3)
        .map(|i| t.register_premultiplier(&poly(&format!("z{i}"), 3)).unwrap())
        .collect();
    let one = t.apply_p1(&zs).unwrap();
    assert_eq!(one.poly, Poly::one(3));
    assert_eq!(one.order, ratio(1, 4));

    let psi: Vec<_> = ["z1^2", "z2^2", "z3^2"]
        .iter()
        .map(|s| t.register_premultiplier(&poly(s, 3)).unwrap())
        .collect();
    let j1 = t.apply_p1(&psi).unwrap();
    assert_eq!(j1.poly, poly("8*z1*z2*z3", 3));
    assert_eq!(j1.order, ratio(1, 4));

    let a = t.register_axiom(&poly("z2", 3), ratio(1, 8)).unwrap();
    let mixed = t.apply_p1(&[zs[0].clone(), a, zs[2].clone()]).unwrap();
    assert_eq!(mixed.order, ratio(1, 16));
    assert!(t.apply_p1(&zs[..2]).is_err());
    assert!(verify_trace(&t).ok);
}

#[test]
fn p2_examples() {
    let caps = Caps::default();
    let mut rng = RandomSource::new(0);
    let mut t = Trace::new();
    let a = t.register_axiom(&poly("z1^2", 1), ratio(1, 2)).unwrap();
    let m = t.apply_p2(&poly("z1", 1), &[a], &mut rng, &caps).unwrap();
    assert_eq!(m.order, ratio(1, 4));
    assert_eq!(t.node(m.node).unwrap().r, Some(2));

    let x = t.register_axiom(&poly("z1^2", 2), ratio(1, 2)).unwrap();
    let y = t.register_axiom(&poly("z2^2", 2), ratio(1, 2)).unwrap();
    let g = poly("z1 + z2", 2);
    let m = t.apply_p2(&g, &[x.clone(), y.clone()], &mut rng, &caps).unwrap();
    assert_eq!(t.node(m.node).unwrap().r, Some(3));
    assert_eq!(m.order, ratio(1, 6));
    let gens = [x.poly.clone(), y.poly.clone()];
    assert!(oracle_in_monomial_ideal(&g.pow(3), &gens));
    assert!(!oracle_in_monomial_ideal(&g.pow(2), &gens));

    let z1 = t.register_axiom(&poly("z1", 2), ratio(1, 2)).unwrap();
    assert!(t.apply_p2(&poly("z2", 2), &[z1], &mut rng, &caps).is_err());

    let pre = t.register_premultiplier(&poly("z1", 1)).unwrap();
    assert!(t.apply_p2(&poly("z1", 1), &[pre], &mut rng, &caps).is_err());
    assert!(verify_trace(&t).ok);
}

#[test]
fn empty_trace_passes() {
    let r = verify_trace(&Trace::new());
    assert!(r.ok);
    assert_eq!(r.steps, 0);
    assert_eq!(r.max_root_order, 0);
}

fn sample_trace() -> Trace {
    let caps = Caps::default();
    let mut rng = RandomSource::new(3);
    let mut t = Trace::new();
    let psi: Vec<_> = ["z1^2", "z2^3"]
        .iter()
        .map(|s| t.register_premultiplier(&poly(s, 2)).unwrap())
        .collect();
    let j = t.apply_p1(&psi).unwrap(); // 6 z1 z2^2
    let a = t.register_axiom(&poly("z1^2 + z2^3", 2), ratio(1, 3)).unwrap();
    let g = t.apply_p2(&poly("z1*z2", 2), &[j.clone(), a.clone()], &mut rng, &caps).unwrap();
    let _ = t.apply_p1(&[g, psi[1].clone()]).unwrap();
    t
}

#[test]
fn tampering_fails_at_the_node() {
    let t = sample_trace();
    let rep = verify_trace(&t);
    assert!(rep.ok, "{:?}", rep.failures);
    assert_eq!(rep.steps, 3);
    assert_eq!(rep.p2_steps, 1);

    let mut bad = t.clone();
    let c = bad.nodes_mut()[4].certificate.as_mut().unwrap();
    c.unit = &c.unit + &Poly::var(2, 0).unwrap();
    let rep = verify_trace(&bad);
    assert_eq!(rep.failures, vec![4]);

    let mut bad = t.clone();
    bad.nodes_mut()[4].r = Some(bad.nodes()[4].r.unwrap() + 1);
    assert_eq!(verify_trace(&bad).failures, vec![4]);

    let mut bad = t.clone();
    bad.nodes_mut()[2].inputs.swap(0, 1);
    assert_eq!(verify_trace(&bad).failures, vec![2]);

    let mut bad = t.clone();
    bad.nodes_mut()[3].order = ratio(1, 100);
    // any positive axiom order is valid; only its consumer notices
    assert_eq!(verify_trace(&bad).failures, vec![4]);
}

#[test]
fn json_round_trip_is_stable() {
    let t = sample_trace();
    let s = t.to_json();
    let back = Trace::from_json(&s).unwrap();
    assert_eq!(back, t);
    assert_eq!(back.to_json(), s);
    assert_eq!(sample_trace().to_json(), s);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v[2]["kind"], "P1");
    assert_eq!(v[4]["r"], serde_json::json!(t.nodes()[4].r.unwrap()));
    assert_eq!(v[0]["order"], "1/2");
    assert!(Trace::from_json("[{\"id\":0}]").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // a power of a random monomial set: P2 always recovers a root order
    // that the termwise oracle confirms is minimal
    #[test]
    fn p2_root_is_minimal_on_monomial_ideals(a in 1u32..5, b in 1u32..5, c in 0i64..4, d in 1i64..4) {
        let caps = Caps::default();
        let mut rng = RandomSource::new(1);
        let mut t = Trace::new();
        let x = t.register_axiom(&Poly::var(2, 0).unwrap().pow(a), ratio(1, 2)).unwrap();
        let y = t.register_axiom(&Poly::var(2, 1).unwrap().pow(b), ratio(1, 3)).unwrap();
        let g = &Poly::var(2, 0).unwrap().scale(&ratio(c, 1)) + &Poly::var(2, 1).unwrap().scale(&ratio(d, 1));
        let m = t.apply_p2(&g, &[x.clone(), y.clone()], &mut rng, &caps).unwrap();
        let r = t.node(m.node).unwrap().r.unwrap();
        let gens = [x.poly, y.poly];
        prop_assert!(oracle_in_monomial_ideal(&g.pow(r), &gens));
        prop_assert!(r == 1 || !oracle_in_monomial_ideal(&g.pow(r - 1), &gens));
        prop_assert_eq!(m.order, ratio(1, 3 * r as i64));
        prop_assert!(verify_trace(&t).ok);
    }
}
