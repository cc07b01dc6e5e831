mod common;

use common::oracles::{elimination, torus};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_closure::groebner::{
    buchberger, contains_one, find_torus_zero, has_common_torus_zero, MonomialOrder,
};
use toric_closure::poly::{numbered_names, parse_poly, Poly};

fn q(a: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(a))
}

/// Random bivariate polynomial of total degree at most 3.
fn random_poly(rng: &mut ChaCha8Rng) -> Poly {
    let k = rng.gen_range(1..=4);
    let terms: Vec<(Vec<u32>, BigRational)> = (0..k)
        .map(|_| {
            let a = rng.gen_range(0..=3u32);
            let b = rng.gen_range(0..=3 - a);
            (vec![a, b], q(rng.gen_range(-3..=3)))
        })
        .collect();
    Poly::from_terms(2, terms)
}

/// A system with a planted zero at a small nonzero rational point.
fn planted(rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let pt = [q(rng.gen_range(1..3) * if rng.gen() { 1 } else { -1 }), q(rng.gen_range(1..3))];
    (0..2)
        .map(|_| {
            let f = random_poly(rng);
            let c = f.eval(&pt);
            f.sub(&Poly::constant(2, c))
        })
        .collect()
}

/// Two polynomials sharing a random factor.
fn shared_factor(rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let h = loop {
        let h = random_poly(rng);
        if h.total_degree() == 1 {
            break h;
        }
    };
    let mut a = random_poly(rng);
    let mut b = random_poly(rng);
    while a.total_degree() > 2 {
        a = random_poly(rng);
    }
    while b.total_degree() > 2 {
        b = random_poly(rng);
    }
    vec![h.mul(&a), h.mul(&b)]
}

fn systems(seed: u64, count: usize) -> Vec<Vec<Poly>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| match i % 4 {
            0 => vec![random_poly(&mut rng)],
            1 => vec![random_poly(&mut rng), random_poly(&mut rng)],
            2 => planted(&mut rng),
            _ => shared_factor(&mut rng),
        })
        .collect()
}

#[test]
fn torus_zero_decision_matches_resultant_oracle() {
    let mut agree = 0;
    let mut positives = 0;
    for sys in systems(0x7a65_726f, 80) {
        let expected = torus::has_common_torus_zero(&sys);
        assert_eq!(has_common_torus_zero(&sys), expected, "system {sys:?}");
        agree += 1;
        positives += usize::from(expected);
    }
    assert!(agree >= 50);
    assert!(positives > 5 && positives < agree - 5, "both answers exercised");
}

#[test]
fn oracle_on_hand_picked_systems() {
    let n = numbered_names("z", 2);
    let p = |s: &str| parse_poly(s, &n).unwrap();
    assert!(!torus::has_common_torus_zero(&[p("z1^3*z2^3")]));
    assert!(torus::has_common_torus_zero(&[p("-z1^2*z2 + z1^2*z2^4")]));
    assert!(!torus::has_common_torus_zero(&[p("z1^5*z2 + z1^2*z2^4"), p("z1^3*z2^3")]));
    // meet only at the origin
    assert!(!torus::has_common_torus_zero(&[p("z1 + z2"), p("z1 - z2")]));
    // meet only on the axis z1 = 0
    assert!(!torus::has_common_torus_zero(&[p("z1 + z2 - 1"), p("z1 - z2 + 1")]));
    // z1 = z2 = root of z^2 + 1
    assert!(torus::has_common_torus_zero(&[p("z1^2 + 1"), p("z1 - z2")]));
}

#[test]
fn generators_reduce_to_zero() {
    for sys in systems(0x6762, 60) {
        for order in [MonomialOrder::grevlex(), MonomialOrder::lex()] {
            let gb = buchberger(&sys, &order);
            assert!(gb.is_groebner());
            for g in &sys {
                assert!(gb.normal_form(g).is_zero());
            }
        }
    }
}

#[test]
fn f_and_one_minus_f_generate_everything() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let f = random_poly(&mut rng);
        assert!(contains_one(&[f.clone(), Poly::one(2).sub(&f)]));
    }
}

#[test]
fn twisted_cubic_relation_matches_resultant() {
    let n = numbered_names("z", 3);
    let p = |s: &str| parse_poly(s, &n).unwrap();
    let (f, g) = (p("z1^2 - z2"), p("z1^3 - z3"));
    let res = elimination::resultant(&f, &g, 0);
    let gb = buchberger(&[f, g], &MonomialOrder::lex());
    let elim: Vec<&Poly> = gb.polys().iter().filter(|q| q.degree_in(0) == 0).collect();
    assert_eq!(elim.len(), 1);
    assert!(*elim[0] == res || *elim[0] == res.neg());
    assert_eq!(res.num_terms(), 2);
}

#[test]
fn witnesses_zero_the_system() {
    let mut found = 0;
    for sys in systems(0x7769, 80) {
        if let Some(w) = find_torus_zero(&sys) {
            found += 1;
            assert!(!w.has_zero_entry());
            for f in &sys {
                assert!(f.eval(w.entries()).is_zero());
            }
            assert!(has_common_torus_zero(&sys));
        }
    }
    assert!(found > 10);
}
