//! Cabling formulas.
//!
//! Write `t` in window `i`, `2i/p <= t <= 2(i+1)/p`, and `s = pt - 2i`.
//! When `q >= 2gp` the cable's Upsilon is `Υ_K(s) + Υ_T(t)` everywhere.
//! When `(2g-1)p < q < 2gp` that sum only holds for `s` away from the
//! window edges (how far is measured by `μ_K`); near the edges the value is
//! the larger of two sums built from the truncated invariant and the
//! windowed torus-knot envelopes.

use num_integer::Integer;

use crate::knots::KnotExpr;
use crate::pl::{upper_envelope, window_bounds, PLFunction, PlError, WindowedPL};
use crate::rational::Rational;
use crate::semigroup::{torus_semigroup, FormalSemigroup, SemigroupError};

use super::{extended_lines, upsilon, upsilon_bl, upsilon_truncated, Method, Result, UpsilonError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `q >= 2gp`
    Additive,
    /// `(2g-1)p < q < 2gp`
    Windowed,
    /// `q <= (2g-1)p`, not an L-space cable
    NotLSpace,
}

/// Parameters of a `(p,q)`-cable of a companion of genus `genus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CableParams {
    pub p: u64,
    pub q: u64,
    pub genus: u64,
    /// `q - (2g-1)p`
    pub delta: i128,
}

impl CableParams {
    pub fn new(p: u64, q: u64, genus: u64) -> Result<Self> {
        if p < 2 {
            return Err(UpsilonError::CableIndex(p));
        }
        if q == 0 {
            return Err(SemigroupError::NonPositive(q).into());
        }
        if p.gcd(&q) != 1 {
            return Err(SemigroupError::NotCoprime(p, q).into());
        }
        let delta = q as i128 - (2 * genus as i128 - 1) * p as i128;
        Ok(CableParams { p, q, genus, delta })
    }

    pub fn regime(&self) -> Regime {
        if self.q >= 2 * self.genus * self.p {
            Regime::Additive
        } else if self.delta > 0 {
            Regime::Windowed
        } else {
            Regime::NotLSpace
        }
    }

    pub fn torus_genus(&self) -> u64 {
        (self.p - 1) * (self.q - 1) / 2
    }
}

/// `(lo, hi]` of the line indices `m` for `variant` in window `i`.
fn variant_range(p: i64, q: i64, delta: i64, variant: u8, i: i64) -> Result<(i64, i64)> {
    let iq = i * q;
    Ok(match variant {
        1 => (iq - delta, iq),
        2 => (iq - p, iq - delta),
        3 => (iq - p, iq - p + delta),
        4 => (iq - p + delta, iq),
        v => return Err(UpsilonError::Variant(v)),
    })
}

fn variant_window(torus: &FormalSemigroup, params: &CableParams, variant: u8, i: u64) -> Result<PLFunction> {
    let delta = params.delta as i64;
    let (lo, hi) = variant_range(params.p as i64, params.q as i64, delta, variant, i as i64)?;
    let (tlo, thi) = window_bounds(params.p, i);
    Ok(upper_envelope(&extended_lines(torus, lo, hi), &tlo, &thi)?)
}

/// The torus-knot envelope restricted, window by window, to one of the four
/// line ranges. Only defined for `0 < δ < p`.
pub fn upsilon_delta_variant(params: &CableParams, variant: u8) -> Result<WindowedPL> {
    if !(1..=4).contains(&variant) {
        return Err(UpsilonError::Variant(variant));
    }
    if params.delta <= 0 || params.delta >= params.p as i128 {
        return Err(UpsilonError::DeltaOutOfRange { delta: params.delta, p: params.p });
    }
    let torus = torus_semigroup(params.p, params.q)?;
    let pieces = (0..params.p).map(|i| variant_window(&torus, params, variant, i)).collect::<Result<Vec<_>>>()?;
    Ok(WindowedPL::new(params.p, pieces)?)
}

/// Which formula covers a stretch of a window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Piece {
    Additive,
    /// Near the left edge of the window: the `(t)` form.
    Lower,
    /// Near the right edge: the `(2 - t)` form.
    Upper,
    /// Between the edge regions when `μ > 1`, where neither edge form is
    /// justified. Uses every block of the window's line range.
    Complete,
}

/// The `s`-range of window `i` on which the additive sum holds in the windowed regime.
pub(crate) fn additive_range(p: u64, i: u64, mu: &Rational) -> Option<(Rational, Rational)> {
    let two = Rational::from(2);
    let lo = if i == 0 { Rational::zero() } else { mu.clone() };
    let hi = if i == p - 1 { two.clone() } else { &two - mu };
    (lo < hi).then_some((lo, hi))
}

/// Partition of `[0, 2]` (in `s`) for window `i`.
///
/// The left-edge form needs `s < μ` and `s < 2 - μ`, the right-edge form
/// `s > μ` and `s > 2 - μ`. With `μ <= 1` these together with the additive
/// range tile the window; `μ > 1` (only the trefoil) leaves a middle stretch
/// for [`Piece::Complete`].
pub(crate) fn window_regions(p: u64, i: u64, mu: &Rational) -> Vec<(Rational, Rational, Piece)> {
    let two = Rational::from(2);
    let mirror = &two - mu;
    let lower_end = mu.clone().min(mirror.clone());
    let upper_start = mu.clone().max(mirror.clone());
    let mut regions = vec![(mirror.clone(), mu.clone(), Piece::Complete)];
    if i > 0 {
        regions.push((Rational::zero(), lower_end, Piece::Lower));
    }
    if i < p - 1 {
        regions.push((upper_start, two.clone(), Piece::Upper));
    }
    if let Some((lo, hi)) = additive_range(p, i, mu) {
        regions.push((lo, hi, Piece::Additive));
    }
    let mut regions: Vec<_> = regions.into_iter().filter(|(lo, hi, _)| lo < hi).collect();
    regions.sort_by(|a, b| a.0.cmp(&b.0));
    regions
}

/// `t ↦ f(pt - 2i)` on window `i`.
pub(crate) fn on_window(f: &PLFunction, p: u64, i: u64) -> Result<PLFunction> {
    Ok(f.pullback(&Rational::from(p), &Rational::from(-2 * i as i64))?)
}

fn t_of_s(p: u64, i: u64, s: &Rational) -> Rational {
    (Rational::from(2 * i) + s) / Rational::from(p)
}

fn inconsistency(e: PlError, what: &str) -> UpsilonError {
    match e {
        PlError::Discontinuity { t, left, right } => {
            UpsilonError::Inconsistent(format!("{what} jumps at t = {t}: {left} vs {right}"))
        }
        other => other.into(),
    }
}

/// Upsilon of the `(p,q)`-cable from the companion's Upsilon and semigroup.
pub(crate) fn cable_formula(companion: &PLFunction, s: &FormalSemigroup, p: u64, q: u64) -> Result<PLFunction> {
    let params = CableParams::new(p, q, s.genus())?;
    let torus = upsilon_bl(&torus_semigroup(p, q)?);
    match params.regime() {
        Regime::Additive => Ok(companion.amalgamate(p)?.pl_add(&torus)?),
        Regime::Windowed => windowed_formula(companion, s, &params, &torus),
        Regime::NotLSpace => Err(UpsilonError::NotLSpace {
            reason: format!("q = {q} < (2g-1)p = {} with g = {}", q as i128 - params.delta, s.genus()),
        }),
    }
}

/// Everything the windowed regime needs, computed once per cable.
struct WindowedParts {
    p: u64,
    companion: PLFunction,
    truncated: PLFunction,
    /// Envelope of the companion's lines `m = 0..2g-1`.
    below_top: PLFunction,
    /// The companion's line `m = 2g`.
    top: PLFunction,
    torus: PLFunction,
    variants: [WindowedPL; 3],
}

impl WindowedParts {
    fn new(companion: &PLFunction, s: &FormalSemigroup, params: &CableParams, torus: &PLFunction) -> Result<Self> {
        let two_g = 2 * s.genus() as i64;
        let (zero, two) = (Rational::zero(), Rational::from(2));
        Ok(WindowedParts {
            p: params.p,
            companion: companion.clone(),
            truncated: upsilon_truncated(s)?,
            below_top: upper_envelope(&extended_lines(s, -1, two_g - 1), &zero, &two)?,
            top: PLFunction::from_line(&extended_lines(s, two_g - 1, two_g)[0], zero, two)?,
            torus: torus.clone(),
            variants: [
                upsilon_delta_variant(params, 1)?,
                upsilon_delta_variant(params, 2)?,
                upsilon_delta_variant(params, 3)?,
            ],
        })
    }

    fn piece(&self, i: u64, kind: Piece) -> Result<PLFunction> {
        let p = self.p;
        let [v1, v2, v3] = &self.variants;
        let full = on_window(&self.companion, p, i)?;
        let trunc = on_window(&self.truncated, p, i)?;
        Ok(match kind {
            Piece::Additive => {
                let (lo, hi) = window_bounds(p, i);
                full.pl_add(&self.torus.restrict(&lo, &hi)?)?
            }
            Piece::Lower => full.pl_add(v1.window(i))?.pl_max(&trunc.pl_add(v2.window(i))?)?,
            Piece::Upper => {
                let mirror = p - 1 - i;
                let a = full.pl_add(&v1.window(mirror).reflect())?;
                let b = trunc.pl_add(&v2.window(mirror).reflect())?;
                a.pl_max(&b)?
            }
            Piece::Complete => {
                let a = on_window(&self.below_top, p, i)?.pl_add(v1.window(i))?;
                let b = trunc.pl_add(v2.window(i))?;
                let c = on_window(&self.top, p, i)?.pl_add(v3.window(i))?;
                a.pl_max(&b)?.pl_max(&c)?
            }
        })
    }
}

fn windowed_formula(
    companion: &PLFunction,
    s: &FormalSemigroup,
    params: &CableParams,
    torus: &PLFunction,
) -> Result<PLFunction> {
    let p = params.p;
    let mu = s.mu()?;
    let parts = WindowedParts::new(companion, s, params, torus)?;
    let mut windows = Vec::with_capacity(p as usize);
    for i in 0..p {
        let mut pieces = Vec::new();
        for (s_lo, s_hi, kind) in window_regions(p, i, &mu) {
            pieces.push(parts.piece(i, kind)?.restrict(&t_of_s(p, i, &s_lo), &t_of_s(p, i, &s_hi))?);
        }
        let what = format!("window {i} of the ({p},{}) cable formula", params.q);
        windows.push(PLFunction::concat(&pieces).map_err(|e| inconsistency(e, &what))?);
    }
    PLFunction::concat(&windows).map_err(|e| inconsistency(e, "assembled cable formula"))
}

/// Upsilon of the `(p,q)`-cable of `k`. `p = 1` returns Upsilon of `k`.
pub fn cable_upsilon(k: &KnotExpr, p: u64, q: u64, method: Method) -> Result<PLFunction> {
    upsilon(&KnotExpr::cable(k.clone(), p, q), method)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn t37() -> KnotExpr {
        KnotExpr::torus(3, 7)
    }

    #[test]
    fn regimes() {
        assert_eq!(CableParams::new(3, 35, 6).unwrap().regime(), Regime::Windowed);
        assert_eq!(CableParams::new(3, 35, 6).unwrap().delta, 2);
        assert_eq!(CableParams::new(2, 5, 1).unwrap().regime(), Regime::Additive);
        assert_eq!(CableParams::new(2, 1, 1).unwrap().regime(), Regime::NotLSpace);
        assert_eq!(CableParams::new(5, 7, 0).unwrap().regime(), Regime::Additive);
        assert!(CableParams::new(1, 7, 3).is_err());
        assert!(CableParams::new(4, 6, 3).is_err());
    }

    #[test]
    fn delta_variants_for_3_35() {
        let params = CableParams::new(3, 35, 6).unwrap();
        let v1 = upsilon_delta_variant(&params, 1).unwrap();
        let v2 = upsilon_delta_variant(&params, 2).unwrap();
        let (lo, hi) = window_bounds(3, 1);
        let expect1 =
            PLFunction::new(vec![(lo.clone(), &lo - Rational::from(24)), (hi.clone(), &hi - Rational::from(24))])
                .unwrap();
        let expect2 =
            PLFunction::new(vec![(lo.clone(), -&lo - Rational::from(22)), (hi.clone(), -&hi - Rational::from(22))])
                .unwrap();
        assert_eq!(v1.window(1), &expect1);
        assert_eq!(v2.window(1), &expect2);
        let torus = upsilon_bl(&torus_semigroup(3, 35).unwrap());
        for i in 0..3 {
            let (lo, hi) = window_bounds(3, i);
            assert_eq!(v1.window(i).pl_max(v2.window(i)).unwrap(), torus.restrict(&lo, &hi).unwrap());
        }
    }

    #[test]
    fn delta_variant_errors() {
        let params = CableParams::new(3, 35, 6).unwrap();
        assert_eq!(upsilon_delta_variant(&params, 5), Err(UpsilonError::Variant(5)));
        let additive = CableParams::new(5, 47, 2).unwrap();
        assert!(matches!(upsilon_delta_variant(&additive, 1), Err(UpsilonError::DeltaOutOfRange { delta: 32, p: 5 })));
    }

    #[test]
    fn worked_example() {
        let f = cable_upsilon(&t37(), 3, 35, Method::Formula).unwrap();
        assert_eq!(f, cable_upsilon(&t37(), 3, 35, Method::Oracle).unwrap());
        for (t, v) in [(r(5, 7), r(-169, 7)), (r(6, 7), r(-186, 7)), (r(7, 8), r(-107, 4)), (r(23, 48), r(-959, 48))] {
            assert_eq!(f.eval(&t).unwrap(), v, "t = {t}");
        }
    }

    #[test]
    fn trefoil_cables() {
        let t23 = KnotExpr::torus(2, 3);
        let f = cable_upsilon(&t23, 2, 5, Method::Both).unwrap();
        assert_eq!(f.eval(&r(1, 2)).unwrap(), Rational::from(-2));
        let f = cable_upsilon(&t23, 2, 3, Method::Both).unwrap();
        assert_eq!(f, upsilon_bl(&torus_semigroup(3, 4).unwrap()));
        assert_eq!(cable_upsilon(&t23, 1, 4, Method::Formula).unwrap(), upsilon_bl(&torus_semigroup(2, 3).unwrap()));
    }

    #[test]
    fn complete_form_holds_on_whole_windows() {
        for core in ["torus(2,3)", "torus(2,5)", "torus(3,4)", "torus(3,7)", "pretzel(3)"] {
            let k: KnotExpr = core.parse().unwrap();
            let s = k.semigroup().unwrap();
            let g = s.genus();
            for p in 2..=4u64 {
                for q in ((2 * g - 1) * p + 1)..(2 * g * p) {
                    let Ok(params) = CableParams::new(p, q, g) else { continue };
                    let torus = upsilon_bl(&torus_semigroup(p, q).unwrap());
                    let parts = WindowedParts::new(&upsilon_bl(&s), &s, &params, &torus).unwrap();
                    let oracle = cable_upsilon(&k, p, q, Method::Oracle).unwrap();
                    for i in 0..p {
                        let (lo, hi) = window_bounds(p, i);
                        assert_eq!(
                            parts.piece(i, Piece::Complete).unwrap(),
                            oracle.restrict(&lo, &hi).unwrap(),
                            "{core} ({p},{q}) window {i}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn edge_forms_fail_for_the_trefoil() {
        // with μ = 2 the left-edge form is off at s = 1 in the (2,3) cable
        let s = torus_semigroup(2, 3).unwrap();
        let params = CableParams::new(2, 3, 1).unwrap();
        let torus = upsilon_bl(&torus_semigroup(2, 3).unwrap());
        let parts = WindowedParts::new(&upsilon_bl(&s), &s, &params, &torus).unwrap();
        let t = r(1, 2);
        assert_eq!(parts.piece(0, Piece::Upper).unwrap().eval(&t).unwrap(), Rational::from(-2));
        assert_eq!(upsilon_bl(&torus_semigroup(3, 4).unwrap()).eval(&t).unwrap(), r(-3, 2));
    }

    #[test]
    fn regions_cover_each_window() {
        for mu in [r(2, 3), r(1, 1), r(4, 3), r(2, 1)] {
            for p in 2..5 {
                for i in 0..p {
                    let regions = window_regions(p, i, &mu);
                    assert_eq!(regions.first().unwrap().0, Rational::zero());
                    assert_eq!(regions.last().unwrap().1, Rational::from(2));
                    assert!(regions.windows(2).all(|w| w[0].1 == w[1].0));
                }
            }
        }
    }
}
