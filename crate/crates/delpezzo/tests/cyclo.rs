//! Oracle tests for exact cyclotomic arithmetic.
//!
//! The expected values here are classical identities computed by hand
//! and frozen: minimal polynomial relations, closed forms for radicals
//! as sums of roots of unity, and Galois behavior.  The property tests
//! then check the field axioms on randomized elements.

use delpezzo::cyclo::{
    nth_root_unit_scalar, parse::parse_scalar, sqrt_int, sqrt_rational, CycNum,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

#[test]
fn minimal_polynomial_relations() {
    // Phi_12(x) = x^4 - x^2 + 1.
    let z = CycNum::zeta(12).unwrap();
    let lhs = &(&z.pow(4) - &z.pow(2)) + &CycNum::one();
    assert!(lhs.is_zero());
    // Phi_8(x) = x^4 + 1.
    let z = CycNum::zeta(8).unwrap();
    assert_eq!(z.pow(4), CycNum::from_int(-1));
    // Phi_7: 1 + z + ... + z^6 = 0.
    let z = CycNum::zeta(7).unwrap();
    let mut s = CycNum::zero();
    for k in 0..7 {
        s = &s + &z.pow(k);
    }
    assert!(s.is_zero());
}

#[test]
fn classical_radical_closed_forms() {
    // sqrt(2) = zeta_8 + zeta_8^{-1}.
    let z8 = CycNum::zeta(8).unwrap();
    assert_eq!(sqrt_int(2).unwrap(), &z8 + &z8.pow(-1));
    // sqrt(3) = zeta_12 + zeta_12^{-1}.
    let z12 = CycNum::zeta(12).unwrap();
    assert_eq!(sqrt_int(3).unwrap(), &z12 + &z12.pow(-1));
    // sqrt(5) = 1 + 2*(zeta_5 + zeta_5^{-1}).
    let z5 = CycNum::zeta(5).unwrap();
    let expected = &CycNum::one() + &(&CycNum::from_int(2) * &(&z5 + &z5.pow(-1)));
    assert_eq!(sqrt_int(5).unwrap(), expected);
    // sqrt(-1) = i.
    assert_eq!(sqrt_int(-1).unwrap(), CycNum::i());
}

#[test]
fn squares_of_radicals() {
    for k in [2i64, 3, 5, 6, 7, 10, 15, -2, -3, 12] {
        let r = sqrt_int(k).unwrap();
        assert_eq!(&r * &r, CycNum::from_int(k), "sqrt({k})^2 = {k}");
    }
    let q = BigRational::new(BigInt::from(49), BigInt::from(8));
    let r = sqrt_rational(&q).unwrap();
    assert_eq!(&r * &r, CycNum::from_rat(q));
}

#[test]
fn root_of_unity_recognition_round_trip() {
    for n in 1u32..=30 {
        for k in 0..n {
            let x = CycNum::zeta_pow(n, k as i64).unwrap();
            let (m, e) = x.as_root_of_unity().expect("power of zeta is a root of unity");
            // (m, e) must be the primitive representation.
            let g = num_integer::gcd(k, n);
            let expect_m = if k == 0 { 1 } else { n / g };
            // Conductor-2 values can appear as conductor-1 data.
            assert_eq!(x, CycNum::zeta_pow(m, e as i64).unwrap());
            assert_eq!(m, expect_m, "order of zeta_{n}^{k}");
            if m > 1 {
                assert_eq!(num_integer::gcd(e, m), 1);
            }
        }
    }
    // Non-roots are rejected.
    assert_eq!(CycNum::from_int(2).as_root_of_unity(), None);
    let almost = &CycNum::zeta(5).unwrap() + &CycNum::from_ratio(1, 7);
    assert_eq!(almost.as_root_of_unity(), None);
}

#[test]
fn conductor_reduction_finds_minimal_field() {
    // zeta_12^3 = i lives at conductor 4.
    let v = CycNum::zeta(12).unwrap().pow(3).reduced();
    assert_eq!(v.conductor(), 4);
    // zeta_8 * zeta_8^{-1} = 1 lives at conductor 1.
    let w = (&CycNum::zeta(8).unwrap() * &CycNum::zeta(8).unwrap().pow(-1)).reduced();
    assert_eq!(w.conductor(), 1);
    // sqrt(2) genuinely needs conductor 8.
    assert_eq!(sqrt_int(2).unwrap().reduced().conductor(), 8);
}

#[test]
fn scalar_literals_match_constructors() {
    assert_eq!(parse_scalar("zeta(12)^7").unwrap(), CycNum::zeta(12).unwrap().pow(7));
    assert_eq!(parse_scalar("sqrt2/2").unwrap(), &sqrt_int(2).unwrap() * &CycNum::from_ratio(1, 2));
    assert_eq!(
        parse_scalar("-1/2 + 1/2*sqrt3*i").unwrap(),
        &CycNum::from_ratio(-1, 2)
            + &(&(&CycNum::from_ratio(1, 2) * &sqrt_int(3).unwrap()) * &CycNum::i())
    );
}

#[test]
fn scalar_roots_recover_finite_order() {
    // The normalization scalars that occur when rescaling projective
    // matrices: lambda^m = c with c = rational * sqrt * root of unity.
    let cases: Vec<(CycNum, u32)> = vec![
        (CycNum::from_int(729), 12),
        (CycNum::from_ratio(1, 4), 2),
        (CycNum::from_int(-8), 6),
        (&CycNum::from_int(8) * &CycNum::zeta(3).unwrap(), 3),
        (
            &(&CycNum::from_int(2) * &sqrt_int(2).unwrap()) * &CycNum::zeta(5).unwrap(),
            3,
        ),
    ];
    for (c, m) in cases {
        let lambda = nth_root_unit_scalar(&c, m).unwrap();
        assert_eq!(lambda.pow(m as i64), c, "lambda^{m} = {c}");
    }
    // Genuine obstructions: the modulus of any solution would be a cube
    // root of a rational, which no abelian extension contains.
    let c = &CycNum::from_int(3) * &CycNum::zeta(3).unwrap();
    assert!(nth_root_unit_scalar(&c, 3).is_err());
}

fn small_rat() -> impl Strategy<Value = BigRational> {
    (-4i64..=4, 1i64..=3)
        .prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn cyc12() -> impl Strategy<Value = CycNum> {
    proptest::collection::vec(small_rat(), 4).prop_map(|cs| {
        let z = CycNum::zeta(12).unwrap();
        let mut acc = CycNum::zero();
        for (i, c) in cs.into_iter().enumerate() {
            acc = &acc + &(&CycNum::from_rat(c) * &z.pow(i as i64));
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in cyc12(), b in cyc12(), c in cyc12()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, CycNum::zero());
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert_eq!(&a * &inv, CycNum::one());
        }
    }

    #[test]
    fn conjugation_is_a_ring_map(a in cyc12(), b in cyc12()) {
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn galois_maps_commute_and_multiply(a in cyc12(), b in cyc12()) {
        // (Z/12)* = {1, 5, 7, 11}.
        for j in [5u32, 7, 11] {
            prop_assert_eq!((&a * &b).galois(j), &a.galois(j) * &b.galois(j));
            prop_assert_eq!((&a + &b).galois(j), &a.galois(j) + &b.galois(j));
        }
        prop_assert_eq!(a.galois(5).galois(5), a.clone());
        prop_assert_eq!(a.galois(5).galois(7), a.galois(11));
    }

    #[test]
    fn mixed_conductor_arithmetic_agrees_with_promotion(a in cyc12(), k in 0i64..8) {
        let z8 = CycNum::zeta(8).unwrap().pow(k);
        let direct = &a * &z8;
        let promoted = &a.promote(24) * &z8.promote(24);
        prop_assert_eq!(direct, promoted);
    }
}
