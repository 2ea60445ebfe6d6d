//! Upsilon of L-space knots and their cables.
//!
//! The envelope of the lines `-2φ(m) - t(g - m)` over a knot's formal
//! semigroup is the reference value ("oracle"). The cabling formulas
//! assemble the same function from the companion and a torus knot, and
//! every public entry point can compare the two.

mod cabling;
mod integral;
mod verify;

pub use cabling::{cable_upsilon, upsilon_delta_variant, CableParams, Regime};
pub use integral::{fk_decomposition, fk_sum, integral_iterated_cable, integral_torus_cf, integral_upsilon, tau};
pub use verify::{verify_identity, Identity, IdentityParams, Status, VerificationReport, NORMALIZATION_NOTE};

use thiserror::Error;

use crate::knots::{KnotExpr, NumberTheoryError};
use crate::pl::{upper_envelope, Line, PLFunction, PlError};
use crate::rational::Rational;
use crate::semigroup::{FormalSemigroup, SemigroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UpsilonError {
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Pl(#[from] PlError),
    #[error(transparent)]
    NumberTheory(#[from] NumberTheoryError),
    #[error("line index m = {m} is outside [0, {two_g}]")]
    LineIndex { m: i64, two_g: u64 },
    #[error("the truncated invariant needs genus at least 1")]
    TruncatedOfUnknot,
    #[error("delta = {delta} is outside (0, {p})")]
    DeltaOutOfRange { delta: i128, p: u64 },
    #[error("variant must be 1, 2, 3 or 4, got {0}")]
    Variant(u8),
    #[error("cable parameter p must be at least 2, got {0}")]
    CableIndex(u64),
    #[error("{reason}; no L-space cabling formula applies when q < (2g-1)p")]
    NotLSpace { reason: String },
    #[error("{level} has q = {q} < 2gp = {bound}; the additive integral formula needs q >= 2gp at every level")]
    NotAdditive { level: String, q: u64, bound: u64 },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("invalid parameters for {id}: {reason}")]
    InvalidParams { id: String, reason: String },
}

pub type Result<T> = std::result::Result<T, UpsilonError>;

/// Which path computes Upsilon of a cable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Cabling formulas applied level by level.
    Formula,
    /// Envelope over the cable's formal semigroup.
    Oracle,
    /// Both, failing if they disagree; returns the oracle value.
    Both,
}

fn line_for(s: &FormalSemigroup, m: i64) -> Line {
    Line::new(Rational::from(m - s.genus() as i64), Rational::from(-2 * s.phi(m)))
}

/// `t ↦ -2φ(m) - t(g - m)` for `0 <= m <= 2g`.
pub fn upsilon_tilde_line(s: &FormalSemigroup, m: i64) -> Result<Line> {
    let two_g = 2 * s.genus();
    if m < 0 || m > two_g as i64 {
        return Err(UpsilonError::LineIndex { m, two_g });
    }
    Ok(line_for(s, m))
}

/// Lines for every integer `m` in the half-open range `(lo, hi]`, with `φ`
/// extended past both ends.
pub(crate) fn extended_lines(s: &FormalSemigroup, lo: i64, hi: i64) -> Vec<Line> {
    ((lo + 1)..=hi).map(|m| line_for(s, m)).collect()
}

fn envelope(lines: &[Line]) -> Result<PLFunction> {
    Ok(upper_envelope(lines, &Rational::zero(), &Rational::from(2))?)
}

/// Upsilon as the upper envelope of the `2g + 1` lines `m = 0..=2g`.
pub fn upsilon_bl(s: &FormalSemigroup) -> PLFunction {
    envelope(&extended_lines(s, -1, 2 * s.genus() as i64)).expect("at least one line on [0, 2]")
}

/// The envelope with the two extreme lines `m = 0` and `m = 2g` left out.
pub fn upsilon_truncated(s: &FormalSemigroup) -> Result<PLFunction> {
    if s.genus() == 0 {
        return Err(UpsilonError::TruncatedOfUnknot);
    }
    envelope(&extended_lines(s, 0, 2 * s.genus() as i64 - 1))
}

pub(crate) fn require_lspace(k: &KnotExpr) -> Result<()> {
    let verdict = k.is_lspace();
    if verdict.is_lspace {
        Ok(())
    } else {
        Err(UpsilonError::NotLSpace { reason: verdict.reason })
    }
}

/// Upsilon of an L-space knot expression.
pub fn upsilon(k: &KnotExpr, method: Method) -> Result<PLFunction> {
    require_lspace(k)?;
    match method {
        Method::Oracle => Ok(upsilon_bl(&k.semigroup()?)),
        Method::Formula => upsilon_formula(k),
        Method::Both => {
            let oracle = upsilon_bl(&k.semigroup()?);
            let formula = upsilon_formula(k)?;
            ensure_equal(&formula, &oracle, &format!("formula and oracle for {k}"))?;
            Ok(oracle)
        }
    }
}

fn upsilon_formula(k: &KnotExpr) -> Result<PLFunction> {
    match k {
        KnotExpr::Cable { companion, p, q } => {
            let inner = upsilon_formula(companion)?;
            if *p == 1 {
                return Ok(inner);
            }
            cabling::cable_formula(&inner, &companion.semigroup()?, *p, *q)
        }
        _ => Ok(upsilon_bl(&k.semigroup()?)),
    }
}

pub(crate) fn ensure_equal(lhs: &PLFunction, rhs: &PLFunction, what: &str) -> Result<()> {
    match lhs.first_difference(rhs)? {
        None => Ok(()),
        Some((t, a, b)) => Err(UpsilonError::Inconsistent(format!("{what} differ at t = {t}: {a} vs {b}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::torus_semigroup;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn tilde_lines() {
        let s = torus_semigroup(3, 7).unwrap();
        let l = upsilon_tilde_line(&s, 0).unwrap();
        assert_eq!((l.slope.clone(), l.intercept.clone()), (Rational::from(-6), Rational::zero()));
        let l = upsilon_tilde_line(&s, 3).unwrap();
        assert_eq!((l.slope.clone(), l.intercept.clone()), (Rational::from(-3), Rational::from(-2)));
        let l = upsilon_tilde_line(&s, 12).unwrap();
        assert_eq!((l.slope.clone(), l.intercept.clone()), (Rational::from(6), Rational::from(-12)));
        assert!(matches!(upsilon_tilde_line(&s, 13), Err(UpsilonError::LineIndex { m: 13, two_g: 12 })));
        assert!(upsilon_tilde_line(&s, -1).is_err());
    }

    #[test]
    fn small_envelopes() {
        assert_eq!(upsilon_bl(&FormalSemigroup::unknot()), PLFunction::zero());
        assert_eq!(upsilon_bl(&torus_semigroup(2, 3).unwrap()).to_text(), "(0,0) (1,-1) (2,0)");
        assert_eq!(upsilon_bl(&torus_semigroup(3, 4).unwrap()).to_text(), "(0,0) (2/3,-2) (4/3,-2) (2,0)");
    }

    #[test]
    fn truncated() {
        assert_eq!(upsilon_truncated(&torus_semigroup(2, 3).unwrap()).unwrap().to_text(), "(0,-2) (2,-2)");
        let tr = upsilon_truncated(&torus_semigroup(3, 7).unwrap()).unwrap();
        assert_eq!(tr.eval(&r(1, 3)).unwrap(), Rational::from(-3));
        assert_eq!(tr.eval(&r(1, 3)).unwrap(), tr.eval(&r(5, 3)).unwrap());
        assert_eq!(tr.eval(&r(1, 2)).unwrap(), r(-7, 2));
        assert_eq!(upsilon_truncated(&FormalSemigroup::unknot()), Err(UpsilonError::TruncatedOfUnknot));
    }

    #[test]
    fn methods_agree_on_nested_cables() {
        let k: KnotExpr = "cable(cable(torus(2,3);2,5);2,17)".parse().unwrap();
        let both = upsilon(&k, Method::Both).unwrap();
        assert_eq!(both, upsilon(&k, Method::Formula).unwrap());
        let k: KnotExpr = "cable(cable(torus(2,3);2,3);3,16)".parse().unwrap();
        assert!(upsilon(&k, Method::Both).is_ok());
    }

    #[test]
    fn rejects_non_lspace() {
        let k: KnotExpr = "cable(torus(2,3);2,1)".parse().unwrap();
        let err = upsilon(&k, Method::Oracle).unwrap_err();
        assert!(err.to_string().contains("no L-space cabling formula"), "{err}");
    }
}
