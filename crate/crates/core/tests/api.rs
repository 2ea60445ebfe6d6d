use upsilon_core::knots::{parse_knot, KnotExpr, ParseError};
use upsilon_core::rational::Rational;
use upsilon_core::semigroup::SemigroupError;
use upsilon_core::upsilon::{
    cable_upsilon, fk_decomposition, integral_iterated_cable, tau, upsilon, upsilon_delta_variant, CableParams, Method,
    Regime, UpsilonError,
};

fn r(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

#[test]
fn worked_example_through_the_public_api() {
    let core = KnotExpr::torus(3, 7);
    let f = cable_upsilon(&core, 3, 35, Method::Both).unwrap();
    assert_eq!(f.eval(&r(5, 7)).unwrap(), r(-169, 7));
    assert_eq!(f.eval(&r(6, 7)).unwrap(), r(-186, 7));
    assert_eq!(tau(&KnotExpr::cable(core, 3, 35)).unwrap(), 52);

    let c = CableParams::new(3, 35, 6).unwrap();
    assert_eq!(c.regime(), Regime::Windowed);
    let v1 = upsilon_delta_variant(&c, 1).unwrap();
    let v2 = upsilon_delta_variant(&c, 2).unwrap();
    let t = r(4, 5);
    assert_eq!(v1.eval(&t).unwrap(), Rational::from(-24) + &t);
    assert_eq!(v2.eval(&t).unwrap(), Rational::from(-22) - &t);
}

#[test]
fn regimes() {
    assert_eq!(CableParams::new(2, 5, 1).unwrap().regime(), Regime::Additive);
    assert_eq!(CableParams::new(2, 3, 1).unwrap().regime(), Regime::Windowed);
    assert_eq!(CableParams::new(2, 1, 1).unwrap().regime(), Regime::NotLSpace);
}

#[test]
fn error_contracts() {
    let err = cable_upsilon(&KnotExpr::torus(2, 5), 2, 3, Method::Formula).unwrap_err();
    assert!(matches!(err, UpsilonError::NotLSpace { .. }), "{err}");

    let c = CableParams::new(5, 47, 2).unwrap();
    assert_eq!(upsilon_delta_variant(&c, 1).unwrap_err(), UpsilonError::DeltaOutOfRange { delta: 32, p: 5 });
    let c = CableParams::new(3, 35, 6).unwrap();
    assert_eq!(upsilon_delta_variant(&c, 5).unwrap_err(), UpsilonError::Variant(5));

    let k = parse_knot("cable(torus(3,7);3,35)").unwrap();
    assert!(matches!(integral_iterated_cable(&k), Err(UpsilonError::NotAdditive { q: 35, bound: 36, .. })));
    assert!(matches!(fk_decomposition(4, 6), Err(UpsilonError::NumberTheory(_))));

    assert!(matches!(parse_knot("torus(4,6)"), Err(ParseError::NotCoprime { .. })));
    let err = parse_knot("cable(torus(2,3);2)").unwrap_err();
    assert!(matches!(err, ParseError::Arity { .. } | ParseError::Syntax { .. }), "{err}");
    assert!(matches!(KnotExpr::Unknot.semigroup().unwrap().mu(), Err(SemigroupError::UndefinedForUnknot)));
}

#[test]
fn p_equal_one_is_the_identity() {
    let k = KnotExpr::cable(KnotExpr::torus(2, 3), 1, 7);
    assert_eq!(upsilon(&k, Method::Both).unwrap(), upsilon(&KnotExpr::torus(2, 3), Method::Oracle).unwrap());
}
