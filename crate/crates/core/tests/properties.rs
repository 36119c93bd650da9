use std::sync::OnceLock;

use num_traits::{One, Zero};
use proptest::prelude::*;

use hilbgw::chow_ring::{CohomologyRing, T1, T2};
use hilbgw::hyperelliptic::{forward_transform, invert_column, HyperellipticError};
use hilbgw::{BigInt, CohVector, CurveClass, Engine, Rational};

fn ring() -> &'static CohomologyRing {
    static RING: OnceLock<CohomologyRing> = OnceLock::new();
    RING.get_or_init(|| CohomologyRing::hilb2().unwrap())
}

fn engine() -> &'static Engine {
    static ENGINE: OnceLock<Engine> = OnceLock::new();
    ENGINE.get_or_init(Engine::hilb2)
}

fn vector() -> impl Strategy<Value = CohVector> {
    prop::collection::vec(-5i64..=5, 9).prop_map(|c| {
        CohVector::from_coeffs(c.into_iter().map(|x| Rational::from_integer(x.into())).collect())
    })
}

/// A class with `a ≤ 3`, `b ≤ 2` and an admissible multiset of non-divisor
/// insertions: each index contributes its codimension minus one to `3b + 1`.
fn admissible() -> impl Strategy<Value = (CurveClass, Vec<usize>)> {
    (0u32..=3, 0u32..=2)
        .prop_filter("nonzero class", |(a, b)| *a + *b > 0)
        .prop_flat_map(|(a, b)| {
            let budget = 3 * b as usize + 1;
            (Just(CurveClass::new(a, b)), prop::collection::vec(3usize..=8, budget))
        })
        .prop_map(|(class, pool)| {
            let mut left = 3 * class.b as i64 + 1;
            let mut ins = Vec::new();
            for i in pool {
                let excess = ring().codim(i) as i64 - 1;
                if excess <= left {
                    ins.push(i);
                    left -= excess;
                }
            }
            // top up with T3 (excess one) until the constraint holds
            ins.extend(std::iter::repeat_n(3, left as usize));
            (class, ins)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cup_is_commutative_and_associative(u in vector(), v in vector(), w in vector()) {
        let r = ring();
        prop_assert_eq!(r.cup(&u, &v), r.cup(&v, &u));
        prop_assert_eq!(r.cup(&r.cup(&u, &v), &w), r.cup(&u, &r.cup(&v, &w)));
    }

    #[test]
    fn unit_and_frobenius(u in vector(), v in vector(), w in vector()) {
        let r = ring();
        prop_assert_eq!(r.cup(&r.basis(0), &u), u.clone());
        let lhs = r.integrate(&r.cup(&r.cup(&u, &v), &w));
        let rhs = r.integrate(&r.cup(&u, &r.cup(&v, &w)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn binomial_transform_round_trips(e in prop::collection::vec(0u64..1_000_000_000, 1..8)) {
        let e: Vec<BigInt> = e.into_iter().map(BigInt::from).collect();
        let i: Vec<Rational> = forward_transform(&e).into_iter().map(Rational::from_integer).collect();
        prop_assert_eq!(invert_column(&i, e.len() as u32, 0).unwrap(), e);
    }

    #[test]
    fn invariants_ignore_insertion_order((class, ins) in admissible(), seed in any::<u64>()) {
        let e = engine();
        let mut shuffled = ins.clone();
        let n = shuffled.len();
        for k in 0..n {
            let j = (seed.rotate_left(k as u32) as usize) % n;
            shuffled.swap(k, j);
        }
        prop_assert_eq!(
            e.invariant_indices(class, &ins).unwrap(),
            e.invariant_indices(class, &shuffled).unwrap()
        );
    }

    #[test]
    fn divisor_axiom((class, ins) in admissible(), t2 in any::<bool>()) {
        let e = engine();
        let d = if t2 { T2 } else { T1 };
        let mut with = ins.clone();
        with.push(d);
        let degree = e.datum().divisor_degree(d, class).unwrap();
        prop_assert_eq!(
            e.invariant_indices(class, &with).unwrap(),
            Rational::from_integer(degree.into()) * e.invariant_indices(class, &ins).unwrap()
        );
    }

    #[test]
    fn wrong_dimension_vanishes((class, mut ins) in admissible(), extra in 3usize..=8) {
        ins.push(extra);
        prop_assert!(engine().invariant_indices(class, &ins).unwrap().is_zero());
    }
}

#[test]
fn inversion_rejects_non_integral_and_negative_columns() {
    let half = Rational::new(1.into(), 2.into());
    assert!(matches!(
        invert_column(&[half], 2, 0),
        Err(HyperellipticError::NonIntegralCount { .. })
    ));
    // I = [1, 0] forces E(1) = 0 and E(0) = 1; I = [0, 1] forces E(0) = -C(4,1)
    let one = Rational::one();
    assert!(invert_column(&[one.clone(), Rational::zero()], 2, 0).is_ok());
    assert!(matches!(
        invert_column(&[Rational::zero(), one], 2, 0),
        Err(HyperellipticError::NegativeCount { .. })
    ));
}

#[test]
fn fundamental_class_insertion_vanishes() {
    let e = engine();
    assert!(e.invariant_indices(CurveClass::new(1, 1), &[0, 4, 4, 4, 4]).unwrap().is_zero());
}
