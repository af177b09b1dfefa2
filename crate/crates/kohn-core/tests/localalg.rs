use kohn_core::localalg::*;
use kohn_core::polyring::*;
use proptest::prelude::*;

fn p(s: &str, n: usize) -> Poly {
    poly(s, n)
}

fn list(s: &str, n: usize) -> Vec<Poly> {
    parse_poly_list(s, Some(n)).unwrap()
}

fn caps() -> Caps {
    Caps::default()
}

#[test]
fn local_order_puts_units_first() {
    let o = MonomialOrder::Local;
    let one = Monomial::one(2);
    let z1 = Monomial::var(2, 0);
    assert_eq!(o.cmp(&one, &z1), std::cmp::Ordering::Greater);
    assert_eq!(MonomialOrder::from_name("block-dp-3"), Some(MonomialOrder::Block(3)));
    assert_eq!(MonomialOrder::Local.to_string(), "local-ds");
}

#[test]
fn normal_form_examples() {
    let sb = StandardBasis::complete_with_lifts(&list("z1", 1), MonomialOrder::Local, &caps()).unwrap();
    let (r, u, a) = mora_normal_form(&p("z1^2", 1), &sb).unwrap();
    assert!(r.is_zero());
    assert_eq!(u, Poly::one(1));
    assert_eq!(a, vec![p("z1", 1)]);

    let sb = StandardBasis::complete_with_lifts(&list("z1, z2", 2), MonomialOrder::Local, &caps()).unwrap();
    let (r, _, _) = mora_normal_form(&Poly::one(2), &sb).unwrap();
    assert_eq!(r, Poly::one(2));

    let raw = StandardBasis::uncompleted(list("z1", 1), MonomialOrder::Local).unwrap();
    assert!(raw.normal_form(&p("z1", 1), &caps()).is_err());
}

#[test]
fn normal_form_sees_local_units() {
    // z1 - z1^2 = z1(1 - z1) generates (z1) locally but not globally.
    let gens = list("z1 - z1^2", 1);
    let sb = StandardBasis::complete_with_lifts(&gens, MonomialOrder::Local, &caps()).unwrap();
    let (r, u, a) = sb.normal_form_with_certificate(&p("z1", 1), &caps()).unwrap();
    assert!(r.is_zero());
    assert!(!u.constant_term().eq(&rat(0)));
    let cert = MembershipCertificate {
        unit: u,
        cofactors: a,
        target: p("z1", 1),
        generators: gens.clone(),
    };
    assert!(cert.verify());
    let global = StandardBasis::complete(&gens, MonomialOrder::Degrevlex, &caps()).unwrap();
    assert!(!global.contains(&p("z1", 1), &caps()).unwrap());
}

#[test]
fn section8_style_rewriting() {
    let gens = list("z1*z2*z3, z2^2 - z1^2, z3^2 - z1^2", 3);
    let sb = StandardBasis::complete_with_lifts(&gens, MonomialOrder::Local, &caps()).unwrap();
    assert!(sb.contains(&p("z1*z2^2*z3^2", 3), &caps()).unwrap());
    assert!(sb.contains(&p("z1^5", 3), &caps()).unwrap());
    assert!(!sb.contains(&p("z1^2", 3), &caps()).unwrap());
    assert!(sb.verify_completed(&caps()).unwrap());
}

#[test]
fn completion_examples() {
    let sb = complete_basis(&list("z1", 1), MonomialOrder::Local).unwrap();
    assert_eq!(sb.generators(), &list("z1", 1)[..]);
    assert!(sb.is_completed());
    let sq = list("z1^2, z2^2, z3^2", 3);
    let sb = complete_basis(&sq, MonomialOrder::Local).unwrap();
    assert_eq!(sb.generators(), &sq[..]);
    let sb = complete_basis(&list("z1^3 + z2^2, z2^3", 2), MonomialOrder::Local).unwrap();
    assert_eq!(staircase_size(&sb.leading_monomials(), 2), Multiplicity::Finite(9));
    assert!(sb.verify_completed(&caps()).unwrap());
    let json = serde_json::to_string(&sb.to_json()).unwrap();
    assert!(json.starts_with(r#"{"order":"local-ds","generators":["#));
    assert!(complete_basis(&[], MonomialOrder::Local).is_err());
}

#[test]
fn degree_cap_is_enforced() {
    let tight = Caps {
        degree: 3,
        ..Caps::default()
    };
    let err = StandardBasis::complete(&list("z1^3 + z2^4, z2^5", 2), MonomialOrder::Local, &tight).unwrap_err();
    assert!(err.is_resource());
}

#[test]
fn multiplicity_examples() {
    assert_eq!(local_multiplicity(&list("z1^2, z2^2, z3^2", 3)).unwrap(), Multiplicity::Finite(8));
    assert_eq!(local_multiplicity(&list("z1", 1)).unwrap(), Multiplicity::Finite(1));
    assert_eq!(local_multiplicity(&list("z1^3 + z2^2, z2^3", 2)).unwrap(), Multiplicity::Finite(9));
    assert_eq!(local_multiplicity(&list("z1*z2", 2)).unwrap(), Multiplicity::Infinite);
    assert_eq!(local_multiplicity(&list("1 + z1", 1)).unwrap(), Multiplicity::Finite(0));
    // The curve z2 = z1^2 meets z2 = 0 with multiplicity 2, and the far
    // branch 1 - z1 does not count locally.
    assert_eq!(local_multiplicity(&list("z2 - z1^2 + z1^3, z2", 2)).unwrap(), Multiplicity::Finite(2));
}

#[test]
fn macaulay_examples() {
    assert_eq!(macaulay_multiplicity(&list("z1^2, z2^2, z3^2", 3), 8).unwrap(), Some(8));
    assert_eq!(macaulay_multiplicity(&list("z1", 1), 3).unwrap(), Some(1));
    assert_eq!(macaulay_multiplicity(&list("z1^3 + z2^2, z2^3", 2), 12).unwrap(), Some(9));
    let s8 = list("z1*z2*z3, z2^2 - z1^2, z3^2 - z1^2", 3);
    let m = macaulay_multiplicity(&s8, 10).unwrap().unwrap();
    assert!(m <= 20);
    assert_eq!(local_multiplicity(&s8).unwrap(), Multiplicity::Finite(m));
    assert_eq!(macaulay_multiplicity(&list("z1*z2", 2), 6).unwrap(), None);
    assert!(macaulay_multiplicity(&list("z1", 1), 0).is_err());
}

#[test]
fn sampled_multiplicity_examples() {
    let mut rng = RandomSource::new(11);
    let m = d_multiplicity(&list("z1^2, z2^2", 3), 1, &mut rng, 3).unwrap();
    assert_eq!(m.value, Multiplicity::Finite(4));
    assert!(m.stable);
    assert_eq!(d_multiplicity(&list("z1, z2, z3", 3), 0, &mut rng, 3).unwrap().value, Multiplicity::Finite(1));
    assert_eq!(d_multiplicity(&list("z1^2", 1), 0, &mut rng, 3).unwrap().value, Multiplicity::Finite(2));
    assert!(d_multiplicity(&list("z1^2", 1), 1, &mut rng, 3).is_err());
    assert_eq!(
        tuple_multiplicity(&list("z1^2, z2^2, z3^2", 3), 3, &mut rng).unwrap().value,
        Multiplicity::Finite(8)
    );
    assert_eq!(tuple_multiplicity(&list("z1*z2*z3", 3), 3, &mut rng).unwrap().value, Multiplicity::Finite(3));
    assert_eq!(tuple_multiplicity(&[], 2, &mut rng).unwrap().value, Multiplicity::Finite(1));
}

#[test]
fn d_multiplicity_matches_oracle_on_the_same_plane() {
    // Restricting to a plane equals adding the complementary linear form.
    let gens = list("z1^2, z2^2", 3);
    let l = LinearChange::from_integers(&[vec![1, 0, 2], vec![0, 1, 3], vec![1, 1, 1]]).unwrap();
    let restricted = restrict_to_subspace(&gens, l.matrix(), 2).unwrap();
    let inv = l.inverse();
    let last = inv.forms()[2].clone();
    let mut plus = gens.clone();
    plus.push(last);
    assert_eq!(
        local_multiplicity(&restricted).unwrap().finite(),
        macaulay_multiplicity(&plus, 10).unwrap()
    );
}

#[test]
fn elimination_examples() {
    // variables z1, w1, w2
    let out = elimination_ideal(&list("z2 - z1, z3 - z1^2", 3), 1).unwrap();
    assert_eq!(out.len(), 1);
    assert!(out[0].is_scalar_multiple_of(&p("z3 - z2^2", 3)).is_some());
    let out = elimination_ideal(&list("z2 - z1^2, z3 - z1^3", 3), 1).unwrap();
    assert_eq!(out.len(), 1);
    assert!(out[0].is_scalar_multiple_of(&p("z2^3 - z3^2", 3)).is_some());
    let out = elimination_ideal(&list("z2 - z1, z1", 2), 1).unwrap();
    assert_eq!(out, vec![p("z2", 2)]);
}

#[test]
fn radical_examples() {
    let r = radical_membership_power(&p("z1", 1), &list("z1^2", 1), 2).unwrap().unwrap();
    assert_eq!(r.r, 2);
    assert!(r.certificate.verify());
    let r = radical_membership_power(&p("z1 + z2", 2), &list("z1^2, z2^2", 2), 4).unwrap().unwrap();
    assert_eq!(r.r, 3);
    assert!(r.certificate.verify());
    assert_eq!(r.certificate.target, p("z1 + z2", 2).pow(3));
    assert!(radical_membership_power(&Poly::one(1), &list("z1", 1), 1).unwrap().is_none());
    let r = radical_membership_power(&p("z1", 1), &list("z1 - z1^2", 1), 1).unwrap().unwrap();
    assert_eq!(r.r, 1);
    assert!(r.certificate.verify());
}

#[test]
fn siu_examples() {
    let mut rng = RandomSource::new(3);
    let sq = list("z1^2, z2^2, z3^2", 3);
    let sel = siu_select_with(&[], &sq, 3, &mut rng, &caps()).unwrap();
    assert_eq!(sel.combinations.len(), 3);
    assert_eq!(sel.multiplicity, Multiplicity::Finite(8));
    let psi = list("z2^2 - z1^2, z3^2 - z1^2, z1^2", 3);
    let sel = siu_select_with(&list("z1*z2*z3", 3), &psi, 2, &mut rng, &caps()).unwrap();
    assert!(sel.multiplicity.finite().unwrap() <= 20);
    assert!(siu_select(&list("z1", 1), &list("z1", 1), 0, &mut rng).unwrap().is_empty());
}

#[test]
fn filtration_prefixes() {
    let fs = list("z1, z2, z3", 3);
    let f = Filtration::from_prefixes(&fs);
    assert_eq!(f.len(), 3);
    assert_eq!(f.stage(2).unwrap(), &fs[..2]);
    assert!(f.stage(0).is_none());
    assert!(Filtration::new(vec![fs[..2].to_vec(), fs[1..].to_vec()]).is_err());
}

fn small_poly(n: usize, deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..=deg, n), -4i64..=4), 1..5)
        .prop_map(move |ts| Poly::from_terms(n, ts.into_iter().map(|(e, c)| (e, rat(c)))).unwrap())
}

/// Ideals with a finite multiplicity: pure powers plus random perturbations.
fn zero_dim_ideal() -> impl Strategy<Value = Vec<Poly>> {
    (1usize..=3).prop_flat_map(|n| {
        (
            prop::collection::vec(1u32..=3, n),
            prop::collection::vec(small_poly(n, 3), n),
            prop::collection::vec(small_poly(n, 2), 0..2),
        )
            .prop_map(move |(exps, perts, extra)| {
                let mut gens: Vec<Poly> = exps
                    .iter()
                    .zip(perts)
                    .enumerate()
                    .map(|(i, (&e, q))| {
                        let pure = Poly::var(n, i).unwrap().pow(e);
                        // keep it a germ: only perturb by terms of order > e
                        let hi: Poly = Poly::from_terms(
                            n,
                            q.terms()
                                .filter(|(m, _)| m.degree() > e as u64)
                                .map(|(m, c)| (m.exponents().to_vec(), c.clone())),
                        )
                        .unwrap();
                        &pure + &hi
                    })
                    .collect();
                gens.extend(extra.into_iter().filter(|g| g.constant_term() == rat(0)));
                gens
            })
    })
}

/// Tamer family for exact certificates: pure powers bent by terms one degree
/// higher, so the global ideal stays small.
fn mild_ideal() -> impl Strategy<Value = Vec<Poly>> {
    (1usize..=3).prop_flat_map(|n| {
        (prop::collection::vec(1u32..=3, n), prop::collection::vec(small_poly(n, 2), n)).prop_map(
            move |(exps, perts)| {
                exps.iter()
                    .zip(perts)
                    .enumerate()
                    .map(|(i, (&e, q))| {
                        let pure = Poly::var(n, i).unwrap().pow(e);
                        let hi = Poly::from_terms(
                            n,
                            q.terms()
                                .filter(|(m, _)| m.degree() == e as u64 + 1)
                                .map(|(m, c)| (m.exponents().to_vec(), c.clone())),
                        )
                        .unwrap();
                        &pure + &hi
                    })
                    .collect()
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn local_matches_macaulay(gens in zero_dim_ideal()) {
        let local = local_multiplicity(&gens).unwrap();
        let oracle = macaulay_multiplicity(&gens, 14).unwrap();
        prop_assert_eq!(local.finite(), oracle);
    }

    #[test]
    fn adding_generators_never_raises_multiplicity(gens in zero_dim_ideal(), extra in small_poly(3, 3)) {
        let n = gens[0].nvars();
        let extra = extra.rename(n, &(0..3).map(|i| i.min(n - 1)).collect::<Vec<_>>());
        if let Ok(extra) = extra {
            let mut big = gens.clone();
            big.push(extra);
            prop_assert!(local_multiplicity(&big).unwrap() <= local_multiplicity(&gens).unwrap());
        }
    }

    #[test]
    fn certificates_reverify(gens in mild_ideal(), g in small_poly(3, 2)) {
        let n = gens[0].nvars();
        let g = Poly::from_terms(n, g.terms().filter(|(m, _)| !m.is_one()).map(|(m, c)| {
            let e: Vec<u32> = m.exponents().iter().take(n).copied().collect();
            (e, c.clone())
        })).unwrap();
        prop_assume!(!g.is_zero() && g.constant_term() == rat(0));
        let mu = local_multiplicity(&gens).unwrap().finite().unwrap();
        let r = radical_membership_power(&g, &gens, mu).unwrap();
        let r = r.expect("maximal-ideal element lies in the radical");
        prop_assert!(r.r as u64 <= exponent_bound(n, mu));
        prop_assert!(r.certificate.verify());
    }

    #[test]
    fn global_basis_is_complete(gens in prop::collection::vec(small_poly(2, 3), 1..4)) {
        let sb = StandardBasis::complete(&gens, MonomialOrder::Degrevlex, &Caps::default()).unwrap();
        prop_assert!(sb.verify_completed(&Caps::default()).unwrap());
        for g in &gens {
            prop_assert!(sb.contains(g, &Caps::default()).unwrap());
        }
    }
}
