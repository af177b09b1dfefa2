use kohn_core::bounds::*;
use kohn_core::Rational;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow};
use proptest::prelude::*;
use std::cmp::Ordering;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

// μ_k = n^{a_k} ν^{b_k} with a_1 = 3, b_1 = n(n+1)
fn mu_via_exponents(n: u64, nu: u64, k: u64) -> PowerProduct {
    if k == 0 {
        return PowerProduct::one();
    }
    let (mut a, mut b) = (BigInt::from(3), BigInt::from(n * (n + 1)));
    for j in 1..k {
        a = a * (n + j + 3) + (j + 3);
        b = b * (n + j + 3) + (n - j) * (n + 1);
    }
    PowerProduct::from_u64(n).pow(&a).mul(&PowerProduct::from_u64(nu).pow(&b))
}

#[test]
fn epsilon_one_one_is_one_64th() {
    let e = epsilon_bound(1, 1).unwrap();
    assert_eq!(e.to_rational(DIGIT_CAP).unwrap(), q(1, 64));
    assert_eq!(e.to_string(), "1/64");
}

#[test]
fn epsilon_one_two_exact() {
    let e = epsilon_bound(1, 2).unwrap();
    let want = Rational::new(
        BigInt::one(),
        BigInt::from(4) * Pow::pow(BigInt::from(4), 1024u32),
    );
    assert_eq!(e.to_rational(DIGIT_CAP).unwrap(), want);
}

#[test]
fn epsilon_three_eight_is_a_tower() {
    let e = epsilon_bound(3, 8).unwrap();
    assert_eq!(e.powers().len(), 1);
    let (base, exp) = &e.powers()[0];
    assert_eq!(*base, 8);
    let want = BigUint::from(2u32) * Pow::pow(BigUint::from(24u32), 6561u32);
    assert_eq!(exp.to_integer(DIGIT_CAP).unwrap(), want);
    assert!(e.to_rational(DIGIT_CAP).is_none());
    let s = describe(&e);
    assert!(s.starts_with("2^"), "{s}");
}

#[test]
fn type_bound_substitutes_t_to_the_n() {
    assert_eq!(epsilon_bound_from_type(2, 3).unwrap(), epsilon_bound(2, 9).unwrap());
    assert!(epsilon_bound_from_type(40, 1 << 20).is_err());
    assert!(epsilon_bound(0, 1).is_err());
}

#[test]
fn mu_examples() {
    assert!(mu_recursion(3, 5, 0).unwrap().is_one());
    assert_eq!(
        mu_recursion(2, 2, 1).unwrap().to_integer(100).unwrap(),
        BigUint::from(512u32)
    );
    assert!(mu_recursion(2, 2, 3).is_err());
}

#[test]
fn epsilon_examples() {
    assert_eq!(epsilon_recursion(1, 2, 0).unwrap().to_rational(100).unwrap(), q(1, 2));
    assert_eq!(epsilon_recursion(1, 2, 1).unwrap().to_rational(100).unwrap(), q(1, 4));
    // ε_2(2,1) = 1/4 · 4^{-(2·μ_1²)^1} with μ_1 = 2^3
    let e = epsilon_recursion(2, 1, 2).unwrap();
    let want = Rational::new(BigInt::one(), BigInt::from(4) * Pow::pow(BigInt::from(4), 128u32));
    assert_eq!(e.to_rational(DIGIT_CAP).unwrap(), want);
}

#[test]
fn mu_matches_exponent_recursion() {
    for n in 1..=4 {
        for nu in 1..=16 {
            let mus = mu_sequence(n, nu).unwrap();
            for k in 0..=n {
                assert_eq!(mus[k as usize], mu_via_exponents(n, nu, k), "n={n} nu={nu} k={k}");
            }
        }
    }
}

#[test]
fn closed_forms_hold_for_small_parameters() {
    for n in 1..=4 {
        for nu in 1..=16 {
            assert!(check_mu_closed_form(n, nu).unwrap(), "mu closed form n={n} nu={nu}");
            assert!(check_epsilon_final(n, nu).unwrap(), "epsilon floor n={n} nu={nu}");
        }
    }
}

#[test]
fn mu_closed_form_exact_for_tiny_cases() {
    // typed out: n=2, ν=2, k=1: μ_1 = 512 ≤ 2^6 · 2^36
    let cf = mu_closed_form(2, 2, 1).to_integer(100).unwrap();
    assert_eq!(cf, BigUint::one() << 42);
}

#[test]
fn compare_achieved_examples() {
    let r = compare_achieved(1, 2, &q(1, 8)).unwrap();
    assert!(r.passed());
    assert_eq!(r.mu_sequence, vec!["1".to_string(), "4".to_string()]);
    let r = compare_achieved(3, 1, &q(1, 4)).unwrap();
    assert!(r.passed());
    let r = compare_achieved(3, 8, &q(1, 1 << 40)).unwrap();
    assert!(r.passed());
    // tampered: below the formula
    assert!(!compare_achieved(1, 1, &q(1, 65)).unwrap().passed());
    assert!(compare_achieved(1, 1, &q(1, 64)).unwrap().passed());
    assert!(!compare_achieved(1, 1, &q(0, 1)).unwrap().passed());
    let json = serde_json::to_value(compare_achieved(1, 1, &q(1, 8)).unwrap()).unwrap();
    assert_eq!(json["epsilon_formula"], "1/64");
    assert_eq!(json["verdict"], "pass");
    assert!(compare_achieved(1, 1, &q(1, 8)).unwrap().to_text().contains("pass"));
}

#[test]
fn huge_rational_against_tower() {
    // 1/2^(10^5): far above ε(3,8), far below 1
    let d = BigInt::one() << 100_000u32;
    let a = Rational::new(BigInt::one(), d + 1);
    let e = epsilon_bound(3, 8).unwrap();
    assert_eq!(e.compare_rational(&a, DIGIT_CAP), Some(Ordering::Less));
    assert_eq!(e.compare_rational(&a, 10), Some(Ordering::Less));
}

#[test]
fn log2_interval_encloses() {
    for x in [1u64, 2, 3, 5, 1000, 1 << 40, u64::MAX] {
        let iv = log2_interval(&BigUint::from(x), 40);
        let f = (x as f64).log2() * (1u64 << 40) as f64;
        assert!(BigInt::from(f as i128 + 2) >= iv.lo, "x={x}");
        assert!(BigInt::from(f as i128 - 2) <= iv.hi, "x={x}");
    }
    let iv = log2_interval(&BigUint::from(8u32), 30);
    assert!(iv.lo <= BigInt::from(3u64 << 30) && BigInt::from(3u64 << 30) <= iv.hi);
}

fn small_value() -> impl Strategy<Value = BoundValue> {
    (1u64..50, 1u64..50, 2u64..9, 1u64..40).prop_map(|(a, b, base, e)| {
        BoundValue::inverse_power(PowerProduct::ratio(a, b), base, PowerProduct::from_u64(e))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn power_product_order_matches_rationals(a in 1u64..10_000, b in 1u64..10_000, c in 1u64..10_000, d in 1u64..10_000) {
        let x = PowerProduct::ratio(a, b);
        let y = PowerProduct::ratio(c, d);
        let want = (a as u128 * d as u128).cmp(&(c as u128 * b as u128));
        prop_assert_eq!(x.cmp_exact(&y, DIGIT_CAP), Some(want));
    }

    #[test]
    fn bound_values_order_matches_rationals(x in small_value(), y in small_value()) {
        let want = x.to_rational(1000).unwrap().cmp(&y.to_rational(1000).unwrap());
        prop_assert_eq!(x.compare(&y, DIGIT_CAP), Some(want));
    }

    // the tower path, forced by a tiny digit cap, agrees with exact values
    #[test]
    fn tower_comparison_agrees_with_exact(
        b1 in 2u64..9, e1 in 200u64..5000, b2 in 2u64..9, e2 in 200u64..5000, p in 1u64..1000,
    ) {
        let x = BoundValue::inverse_power(PowerProduct::ratio(1, p), b1, PowerProduct::from_u64(e1));
        let y = BoundValue::inverse_power(PowerProduct::one(), b2, PowerProduct::from_u64(e2));
        let exact = x.compare(&y, DIGIT_CAP).unwrap();
        prop_assert_eq!(exact, x.to_rational(DIGIT_CAP).unwrap().cmp(&y.to_rational(DIGIT_CAP).unwrap()));
        if let Some(o) = x.compare(&y, 1) {
            prop_assert_eq!(o, exact);
        }
        let r = Rational::new(1.into(), BigInt::from(p) << (e2 as usize));
        let want = x.to_rational(DIGIT_CAP).unwrap().cmp(&r);
        if let Some(o) = x.compare_rational(&r, 1) {
            prop_assert_eq!(o, want);
        }
    }
}

#[test]
fn tower_path_decides_well_separated_values() {
    let x = BoundValue::inverse_power(PowerProduct::one(), 2, PowerProduct::from_u64(10_000));
    let y = BoundValue::inverse_power(PowerProduct::one(), 3, PowerProduct::from_u64(40_000));
    assert_eq!(x.compare(&y, 1), Some(Ordering::Greater));
    assert_eq!(y.compare(&x, 1), Some(Ordering::Less));
    assert_eq!(x.compare(&BoundValue::one(), 1), Some(Ordering::Less));
}
