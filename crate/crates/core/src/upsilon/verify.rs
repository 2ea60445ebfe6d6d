//! Exact checks of the cabling identities, one report per parameter tuple.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::alexander::{alexander_from_semigroup, cabling_product};
use crate::knots::{continued_fraction, KnotExpr};
use crate::pl::{window_bounds, PLFunction};
use crate::rational::Rational;
use crate::semigroup::{cable_semigroup, torus_semigroup};

use super::cabling::{additive_range, on_window, upsilon_delta_variant, CableParams, Regime};
use super::integral::{fk_sum, integral_iterated_cable, integral_torus_cf};
use super::{upsilon, upsilon_bl, upsilon_truncated, Method, Result, UpsilonError};

/// Emitted once per run of the torus-knot integral check.
pub const NORMALIZATION_NOTE: &str = "normalization: exact integration gives I(T(p,q)) = -(pq - sum a_i)/3 \
(for example I(T(2,3)) = -1); the form 2I(T(p,q)) = -(pq - sum a_i)/3, and likewise \
I(T(p,p+1)) = -(p^2-1)/6, are smaller by a factor of 2";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Identity {
    /// Additive cabling formula against the oracle.
    AdditiveCable,
    /// Additive formula on the middle stretch of each window, windowed regime.
    MiddleStretch,
    /// Full windowed assembly against the oracle.
    WindowedCable,
    /// `Υ_T + Υ_K(s) >= Υ_cable >= Υ_T + Υ^tr_K(s)`.
    Sandwich,
    /// Reflection symmetries of the truncated and windowed variants.
    Reflections,
    /// Torus-knot integral via continued fractions.
    TorusIntegral,
    /// Integral of iterated cables.
    IteratedIntegral,
    /// Decomposition into `T(n, n+1)` and its recurrence.
    TorusDecomposition,
    /// Cable semigroup validity and the Alexander product.
    CableSemigroup,
    /// Convexity, symmetry, endpoints and τ.
    Structure,
}

impl Identity {
    pub const ALL: [Identity; 10] = [
        Identity::AdditiveCable,
        Identity::MiddleStretch,
        Identity::WindowedCable,
        Identity::Sandwich,
        Identity::Reflections,
        Identity::TorusIntegral,
        Identity::IteratedIntegral,
        Identity::TorusDecomposition,
        Identity::CableSemigroup,
        Identity::Structure,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Identity::AdditiveCable => "thm-main",
            Identity::MiddleStretch => "thm-s",
            Identity::WindowedCable => "thm-cor",
            Identity::Sandwich => "sandwich",
            Identity::Reflections => "lemma18",
            Identity::TorusIntegral => "prop8",
            Identity::IteratedIntegral => "thm9",
            Identity::TorusDecomposition => "fk",
            Identity::CableSemigroup => "wang",
            Identity::Structure => "symmetry",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Identity {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Identity::ALL.into_iter().find(|id| id.tag() == s).ok_or_else(|| format!("unknown identity `{s}`"))
    }
}

impl Serialize for Identity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.tag())
    }
}

/// A knot and/or cable parameters; which fields matter depends on the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct IdentityParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub core: Option<KnotExpr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
}

impl IdentityParams {
    pub fn knot(core: KnotExpr) -> Self {
        IdentityParams { core: Some(core), ..Default::default() }
    }

    pub fn pair(p: u64, q: u64) -> Self {
        IdentityParams { core: None, p: Some(p), q: Some(q) }
    }

    pub fn cable(core: KnotExpr, p: u64, q: u64) -> Self {
        IdentityParams { core: Some(core), p: Some(p), q: Some(q) }
    }
}

impl fmt::Display for IdentityParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(k) = &self.core {
            parts.push(format!("core={k}"));
        }
        if let Some(p) = self.p {
            parts.push(format!("p={p}"));
        }
        if let Some(q) = self.q {
            parts.push(format!("q={q}"));
        }
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub id: Identity,
    pub params: IdentityParams,
    pub status: Status,
    /// `num/den` where the sides first differ.
    pub witness_t: Option<String>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub note: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Outcome of one comparison inside a check.
enum Outcome {
    Pass,
    Fail { witness: Option<Rational>, lhs: String, rhs: String, note: String },
}

fn compare_pl(lhs: &PLFunction, rhs: &PLFunction, what: &str) -> Result<Outcome> {
    Ok(match lhs.first_difference(rhs)? {
        None => Outcome::Pass,
        Some((t, a, b)) => {
            Outcome::Fail { witness: Some(t), lhs: a.to_string(), rhs: b.to_string(), note: what.into() }
        }
    })
}

/// Fails if `lower > upper` anywhere.
fn compare_le(lower: &PLFunction, upper: &PLFunction, what: &str) -> Result<Outcome> {
    Ok(match lower.first_excess_over(upper)? {
        None => Outcome::Pass,
        Some((t, a, b)) => {
            Outcome::Fail { witness: Some(t), lhs: a.to_string(), rhs: b.to_string(), note: what.into() }
        }
    })
}

fn compare_values(lhs: &Rational, rhs: &Rational, what: &str) -> Outcome {
    if lhs == rhs {
        Outcome::Pass
    } else {
        Outcome::Fail { witness: None, lhs: lhs.to_string(), rhs: rhs.to_string(), note: what.into() }
    }
}

fn fact(ok: bool, what: impl Into<String>) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail { witness: None, lhs: "false".into(), rhs: "true".into(), note: what.into() }
    }
}

fn first_failure(checks: impl IntoIterator<Item = Result<Outcome>>) -> Result<Outcome> {
    for check in checks {
        let outcome = check?;
        if matches!(outcome, Outcome::Fail { .. }) {
            return Ok(outcome);
        }
    }
    Ok(Outcome::Pass)
}

fn invalid(id: Identity, reason: impl Into<String>) -> UpsilonError {
    UpsilonError::InvalidParams { id: id.tag().into(), reason: reason.into() }
}

fn need_core(id: Identity, params: &IdentityParams) -> Result<KnotExpr> {
    params.core.clone().ok_or_else(|| invalid(id, "a core knot is required"))
}

fn need_pair(id: Identity, params: &IdentityParams) -> Result<(u64, u64)> {
    match (params.p, params.q) {
        (Some(p), Some(q)) => Ok((p, q)),
        _ => Err(invalid(id, "p and q are required")),
    }
}

fn cable_in(id: Identity, params: &IdentityParams, regime: Regime) -> Result<(KnotExpr, CableParams)> {
    let core = need_core(id, params)?;
    let (p, q) = need_pair(id, params)?;
    super::require_lspace(&core)?;
    let cable = CableParams::new(p, q, core.genus())?;
    if cable.regime() != regime {
        return Err(invalid(
            id,
            format!("({p},{q}) over {core} is in the {:?} regime, not {regime:?}", cable.regime()),
        ));
    }
    Ok((core, cable))
}

/// Runs one identity check. Invalid parameters are an error, a failed identity is a report.
pub fn verify_identity(id: Identity, params: &IdentityParams) -> Result<VerificationReport> {
    let outcome = match id {
        Identity::AdditiveCable => check_additive(id, params)?,
        Identity::MiddleStretch => check_middle(id, params)?,
        Identity::WindowedCable => check_windowed(id, params)?,
        Identity::Sandwich => check_sandwich(id, params)?,
        Identity::Reflections => check_reflections(id, params)?,
        Identity::TorusIntegral => check_torus_integral(id, params)?,
        Identity::IteratedIntegral => check_iterated_integral(id, params)?,
        Identity::TorusDecomposition => check_decomposition(id, params)?,
        Identity::CableSemigroup => check_cable_semigroup(id, params)?,
        Identity::Structure => check_structure(id, params)?,
    };
    let report = match outcome {
        Outcome::Pass => VerificationReport {
            id,
            params: params.clone(),
            status: Status::Pass,
            witness_t: None,
            lhs: None,
            rhs: None,
            note: None,
        },
        Outcome::Fail { witness, lhs, rhs, note } => VerificationReport {
            id,
            params: params.clone(),
            status: Status::Fail,
            witness_t: witness.map(|t| t.to_fraction_string()),
            lhs: Some(lhs),
            rhs: Some(rhs),
            note: Some(note),
        },
    };
    Ok(report)
}

fn formula_or_failure(k: &KnotExpr) -> Result<std::result::Result<PLFunction, Outcome>> {
    match upsilon(k, Method::Formula) {
        Ok(f) => Ok(Ok(f)),
        Err(UpsilonError::Inconsistent(msg)) => {
            Ok(Err(Outcome::Fail { witness: None, lhs: "formula".into(), rhs: "oracle".into(), note: msg }))
        }
        Err(e) => Err(e),
    }
}

fn check_additive(id: Identity, params: &IdentityParams) -> Result<Outcome> {
    let (core, c) = cable_in(id, params, Regime::Additive)?;
    let k = KnotExpr::cable(core, c.p, c.q);
    let formula = match formula_or_failure(&k)? {
        Ok(f) => f,
        Err(failure) => return Ok(failure),
    };
    compare_pl(&formula, &upsilon(&k, Method::Oracle)?, "formula vs oracle")
}

fn check_windowed(id: Identity, params: &IdentityParams) -> Result<Outcome> {
    let (core, c) = cable_in(id, params, Regime::Windowed)?;
    let k = KnotExpr::cable(core, c.p, c.q);
    let formula = match formula_or_failure(&k)? {
        Ok(f) => f,
        Err(failure) => return Ok(failure),
    };
    compare_pl(&formula, &upsilon(&k, Method::Oracle)?, "windowed assembly vs oracle")
}

fn check_middle(id: Identity, params: &IdentityParams) -> Result<Outcome> {
    let (core, c) = cable_in(id, params, Regime::Windowed)?;
    let s = core.semigroup()?;
    let companion = upsilon_bl(&s);
    let mu = s.mu()?;
    let torus = upsilon_bl(&torus_semigroup(c.p, c.q)?);
    let oracle = upsilon(&KnotExpr::cable(core, c.p, c.q), Method::Oracle)?;
    let pr = Rational::from(c.p);
    let mut checks = Vec::new();
    for i in 0..c.p {
        let Some((s_lo, s_hi)) = additive_range(c.p, i, &mu) else { continue };
        let lo = (Rational::from(2 * i) + s_lo) / &pr;
        let hi = (Rational::from(2 * i) + s_hi) / &pr;
        let (wlo, whi) = window_bounds(c.p, i);
        let sum = on_window(&companion, c.p, i)?.pl_add(&torus.restrict(&wlo, &whi)?)?;
        checks.push(compare_pl(
            &sum.restrict(&lo, &hi)?,
            &oracle.restrict(&lo, &hi)?,
            &format!("additive sum vs oracle in window {i}"),
        ));
    }
    first_failure(checks)
}

fn check_sandwich(id: Identity, params: &IdentityParams) -> Result<Outcome> {
    let (core, c) = cable_in(id, params, Regime::Windowed)?;
    let s = core.semigroup()?;
    let torus = upsilon_bl(&torus_semigroup(c.p, c.q)?);
    let upper = upsilon_bl(&s).amalgamate(c.p)?.pl_add(&torus)?;
    let lower = upsilon_truncated(&s)?.amalgamate(c.p)?.pl_add(&torus)?;
    let oracle = upsilon(&KnotExpr::cable(core, c.p, c.q), Method::Oracle)?;
    first_failure([
        compare_le(&oracle, &upper, "cable exceeds the additive upper bound"),
        compare_le(&lower, &oracle, "truncated lower bound exceeds the cable"),
    ])
}

fn check_reflections(id: Identity, params: &IdentityParams) -> Result<Outcome> {
    let core = need_core(id, params)?;
    super::require_lspace(&core)?;
    let truncated = upsilon_truncated(&core.semigroup()?)?;
    let mut checks = vec![compare_pl(&truncated, &truncated.reflect(), "truncated invariant vs its reflection")];
    if let (Some(p), Some(q)) = (params.p, params.q) {
        let c = CableParams::new(p, q, core.genus())?;
        let variants = (1..=4u8).map(|v| upsilon_delta_variant(&c, v)).collect::<Result<Vec<_>>>()?;
        for i in 0..p {
            let mirror = p - 1 - i;
            checks.push(compare_pl(
                variants[2].window(i),
                &variants[0].window(mirror).reflect(),
                &format!("variant 3 vs reflected variant 1 in window {i}"),
            ));
            checks.push(compare_pl(
                variants[3].window(i),
                &variants[1].window(mirror).reflect(),
                &format!("variant 4 vs reflected variant 2 in window {i}"),
            ));
        }
    }
    first_failure(checks)
}

fn check_torus_integral(id: Identity, params: &IdentityParams) -> Result<Outcome> {
    let (p, q) = need_pair(id, params)?;
    let exact = upsilon_bl(&torus_semigroup(p, q)?).integrate();
    let closed = integral_torus_cf(p, q)?;
    let mut checks = vec![Ok(compare_values(&exact, &closed, "exact integral vs continued-fraction form"))];
    if let Some(alt) = continued_fraction(q, p)?.alternative() {
        let pq = Rational::from(p * q);
        let other = -(pq - Rational::from(alt.coefficient_sum())) / Rational::from(3);
        checks.push(Ok(compare_values(&other, &closed, "expansion [.., a_n - 1, 1] vs greedy expansion")));
    }
    first_failure(checks)
}

fn check_iterated_integral(id: Identity, params: &IdentityParams) -> Result<Outcome> {
    let k = need_core(id, params)?;
    let sum = integral_iterated_cable(&k)?;
    let assembled = match formula_or_failure(&k)? {
        Ok(f) => f.integrate(),
        Err(failure) => return Ok(failure),
    };
    let direct = upsilon(&k, Method::Oracle)?.integrate();
    first_failure([
        Ok(compare_values(&sum, &assembled, "recursive sum vs integral of the assembled function")),
        Ok(compare_values(&sum, &direct, "recursive sum vs integral of the oracle")),
    ])
}

fn check_decomposition(id: Identity, params: &IdentityParams) -> Result<Outcome> {
    let (p, q) = need_pair(id, params)?;
    let target = upsilon_bl(&torus_semigroup(p, q)?);
    let mut checks = vec![compare_pl(&fk_sum(p, q)?, &target, "sum of T(n,n+1) terms vs torus knot")];
    if q > p && p >= 2 {
        let rest = upsilon_bl(&torus_semigroup(p, q - p)?).pl_add(&upsilon_bl(&torus_semigroup(p, p + 1)?))?;
        checks.push(compare_pl(&rest, &target, "recurrence T(p,q-p) + T(p,p+1)"));
    }
    if p >= 2 {
        let terms: Vec<(u64, u64)> = continued_fraction(q, p)?.terms().collect();
        let second: u64 = terms.iter().map(|(a, n)| a * n * (n - 1)).sum();
        let first: u64 = terms.iter().map(|(a, n)| a * n).sum();
        checks.push(Ok(compare_values(
            &Rational::from(second),
            &Rational::from((p - 1) * (q - 1)),
            "sum a_i p_i (p_i - 1) vs (p-1)(q-1)",
        )));
        checks.push(Ok(compare_values(&Rational::from(first), &Rational::from(q + p - 1), "sum a_i p_i vs q + p - 1")));
    }
    first_failure(checks)
}

fn check_cable_semigroup(id: Identity, params: &IdentityParams) -> Result<Outcome> {
    let core = need_core(id, params)?;
    let (p, q) = need_pair(id, params)?;
    let s = core.semigroup()?;
    let cable = cable_semigroup(&s, p, q)?;
    let expected_genus = if p == 1 { s.genus() } else { p * s.genus() + (p - 1) * (q - 1) / 2 };
    let product = cabling_product(&alexander_from_semigroup(&s), p, &alexander_from_semigroup(&torus_semigroup(p, q)?));
    let checks = [
        fact(cable.validate().is_ok(), "cable semigroup fails validation"),
        compare_values(&Rational::from(cable.genus()), &Rational::from(expected_genus), "cable genus"),
        fact(!cable.contains(1) || cable.genus() == 0, "1 lies in the cable semigroup"),
        fact(
            alexander_from_semigroup(&cable).coefficients() == &product[..],
            "Alexander polynomial is not the cabling product",
        ),
    ];
    first_failure(checks.into_iter().map(Ok))
}

fn check_structure(id: Identity, params: &IdentityParams) -> Result<Outcome> {
    let k = need_core(id, params)?;
    let f = upsilon(&k, Method::Oracle)?;
    let zero = Rational::zero();
    let mut checks = vec![
        Ok(fact(f.is_convex(), "not convex")),
        Ok(compare_values(&f.eval(&zero)?, &zero, "value at 0")),
        Ok(compare_values(&f.eval(&Rational::from(2))?, &zero, "value at 2")),
        compare_pl(&f, &f.reflect(), "reflection t -> 2 - t"),
        Ok(compare_values(&Rational::from(super::tau(&k)?), &Rational::from(k.genus()), "tau vs genus")),
    ];
    let s = k.semigroup()?;
    if s.genus() > 0 {
        let truncated = upsilon_truncated(&s)?;
        checks.push(compare_le(&truncated, &f, "truncated exceeds Upsilon"));
        let mu = s.mu()?;
        let hi = Rational::from(2) - &mu;
        if mu < hi {
            checks.push(compare_pl(
                &truncated.restrict(&mu, &hi)?,
                &f.restrict(&mu, &hi)?,
                "truncated vs Upsilon on [mu, 2 - mu]",
            ));
        }
    }
    first_failure(checks)
}
