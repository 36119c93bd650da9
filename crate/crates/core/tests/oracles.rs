use hilbgw::hyperelliptic::{invert_counts, severi_degree};
use hilbgw::oracles::{engine_nd, kontsevich_nd, OracleError};
use hilbgw::{BigInt, CurveClass, Engine, EngineError, Rational};

const ND: [i64; 7] = [1, 1, 12, 620, 87304, 26312976, 14616808192];

#[test]
fn kontsevich_recursion_values() {
    for (d, &n) in ND.iter().enumerate() {
        assert_eq!(kontsevich_nd(d as i64 + 1).unwrap(), BigInt::from(n));
    }
    assert!(matches!(kontsevich_nd(0), Err(OracleError::Degree(0))));
}

#[test]
fn engine_on_p2_matches_recursion() {
    let p2 = Engine::p2();
    for d in 1..=5u32 {
        let want = Rational::from_integer(kontsevich_nd(d as i64).unwrap());
        assert_eq!(engine_nd(&p2, d).unwrap(), want, "d={d}");
    }
}

#[test]
fn p2_rejects_classes_with_fiber_degree() {
    let p2 = Engine::p2();
    assert!(matches!(
        p2.invariant_indices(CurveClass::new(1, 1), &[2, 2]),
        Err(EngineError::Ineffective(_))
    ));
}

#[test]
fn two_pair_counts_are_plane_curve_counts() {
    let e = Engine::hilb2();
    for d in 2..=4u32 {
        let table = invert_counts(&e, d, 2).unwrap();
        assert_eq!(table.e(0).unwrap(), &BigInt::from(ND[d as usize - 1]), "d={d}");
        assert_eq!(
            severi_degree(&e, 0, d).unwrap(),
            Rational::from_integer(ND[d as usize - 1].into())
        );
    }
    assert_eq!(severi_degree(&e, 0, 1).unwrap(), Rational::from_integer(1.into()));
}

#[test]
fn genus_one_severi_degrees() {
    // plane cubics through 9 points, and genus-1 quartics through 11 points
    let e = Engine::hilb2();
    assert_eq!(severi_degree(&e, 1, 3).unwrap(), Rational::from_integer(1.into()));
    assert_eq!(severi_degree(&e, 1, 4).unwrap(), Rational::from_integer(225.into()));
    assert!(severi_degree(&e, 2, 4).is_err());
}
