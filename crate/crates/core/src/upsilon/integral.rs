//! τ, integrals of Upsilon, and the decomposition of torus knots into `T(n, n+1)` pieces.

use crate::knots::{continued_fraction, KnotExpr};
use crate::pl::PLFunction;
use crate::rational::Rational;
use crate::semigroup::torus_semigroup;

use super::{ensure_equal, require_lspace, upsilon, upsilon_bl, Method, Result, UpsilonError};

/// `τ = -Υ'(0)`.
pub fn tau(k: &KnotExpr) -> Result<i64> {
    let slope = upsilon(k, Method::Oracle)?.right_derivative_at_zero();
    (-&slope).to_i64().ok_or_else(|| UpsilonError::Inconsistent(format!("non-integral slope {slope} at 0")))
}

/// `∫_0^2 Υ_K(t) dt`, exact.
pub fn integral_upsilon(k: &KnotExpr) -> Result<Rational> {
    Ok(upsilon(k, Method::Oracle)?.integrate())
}

/// `-(pq - Σ a_i) / 3` where `q/p = [a_1, ..., a_n]`.
pub fn integral_torus_cf(p: u64, q: u64) -> Result<Rational> {
    let cf = continued_fraction(q, p)?;
    let pq = Rational::from(p) * Rational::from(q);
    Ok(-(pq - Rational::from(cf.coefficient_sum())) / Rational::from(3))
}

/// Integral of an iterated cable in which every level has `q >= 2gp`,
/// as the integral of the innermost knot plus one torus-knot term per level.
pub fn integral_iterated_cable(k: &KnotExpr) -> Result<Rational> {
    require_lspace(k)?;
    match k {
        KnotExpr::Cable { companion, p, q } => {
            let inner = integral_iterated_cable(companion)?;
            if *p == 1 {
                return Ok(inner);
            }
            let bound = 2 * companion.genus() * p;
            if *q < bound {
                return Err(UpsilonError::NotAdditive { level: k.to_string(), q: *q, bound });
            }
            Ok(inner + integral_torus_cf(*p, *q)?)
        }
        _ => integral_upsilon(k),
    }
}

/// Pairs `(a_i, p_i)` with `Υ_{T(p,q)} = Σ a_i Υ_{T(p_i, p_i + 1)}`, checked before returning.
pub fn fk_decomposition(p: u64, q: u64) -> Result<Vec<(u64, u64)>> {
    let terms: Vec<(u64, u64)> = continued_fraction(q, p)?.terms().collect();
    let target = upsilon_bl(&torus_semigroup(p, q)?);
    ensure_equal(&sum_of_terms(&terms)?, &target, &format!("decomposition of T({p},{q})"))?;
    Ok(terms)
}

fn sum_of_terms(terms: &[(u64, u64)]) -> Result<PLFunction> {
    let mut acc = PLFunction::zero();
    for &(a, n) in terms {
        if a == 0 || n < 2 {
            continue;
        }
        let piece = upsilon_bl(&torus_semigroup(n, n + 1)?).scale(&Rational::from(a));
        acc = acc.pl_add(&piece)?;
    }
    Ok(acc)
}

/// `Σ a_i Υ_{T(p_i, p_i + 1)}` over the continued fraction of `q/p`, without comparing.
pub fn fk_sum(p: u64, q: u64) -> Result<PLFunction> {
    let terms: Vec<(u64, u64)> = continued_fraction(q, p)?.terms().collect();
    sum_of_terms(&terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn parse(s: &str) -> KnotExpr {
        s.parse().unwrap()
    }

    #[test]
    fn tau_is_genus() {
        assert_eq!(tau(&KnotExpr::Unknot).unwrap(), 0);
        assert_eq!(tau(&KnotExpr::torus(3, 7)).unwrap(), 6);
        assert_eq!(tau(&parse("cable(torus(2,3);2,5)")).unwrap(), 4);
    }

    #[test]
    fn integrals() {
        assert_eq!(integral_upsilon(&KnotExpr::Unknot).unwrap(), Rational::zero());
        assert_eq!(integral_upsilon(&KnotExpr::torus(2, 3)).unwrap(), Rational::from(-1));
        assert_eq!(integral_upsilon(&KnotExpr::torus(3, 4)).unwrap(), r(-8, 3));
        assert_eq!(integral_torus_cf(2, 3).unwrap(), Rational::from(-1));
        assert_eq!(integral_torus_cf(1, 9).unwrap(), Rational::zero());
        assert_eq!(integral_torus_cf(3, 7).unwrap(), r(-16, 3));
        assert_eq!(integral_torus_cf(3, 7).unwrap(), Rational::from(2) * integral_torus_cf(3, 4).unwrap());
        assert!(integral_torus_cf(3, 6).is_err());
    }

    #[test]
    fn iterated_cable_integrals() {
        assert_eq!(integral_iterated_cable(&parse("cable(torus(2,3);2,5)")).unwrap(), Rational::from(-3));
        assert_eq!(integral_iterated_cable(&parse("cable(unknot;3,5)")).unwrap(), integral_torus_cf(3, 5).unwrap());
        let k = parse("cable(cable(torus(2,3);2,5);2,17)");
        let expected = Rational::from(-3) + integral_torus_cf(2, 17).unwrap();
        assert_eq!(integral_iterated_cable(&k).unwrap(), expected);
        assert_eq!(upsilon(&k, Method::Formula).unwrap().integrate(), expected);
        let err = integral_iterated_cable(&parse("cable(torus(3,7);3,35)")).unwrap_err();
        assert!(matches!(err, UpsilonError::NotAdditive { q: 35, bound: 36, .. }), "{err}");
    }

    #[test]
    fn decompositions() {
        assert_eq!(fk_decomposition(3, 7).unwrap(), vec![(2, 3), (3, 1)]);
        assert_eq!(fk_decomposition(2, 3).unwrap(), vec![(1, 2), (2, 1)]);
        assert_eq!(fk_decomposition(4, 5).unwrap(), vec![(1, 4), (4, 1)]);
        assert_eq!(fk_sum(3, 2).unwrap(), upsilon_bl(&torus_semigroup(2, 3).unwrap()));
        assert!(fk_decomposition(4, 6).is_err());
    }
}
