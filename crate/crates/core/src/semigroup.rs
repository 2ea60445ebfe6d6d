//! Formal semigroups of L-space knots.
//!
//! A formal semigroup is a cofinite subset `S` of the non-negative integers
//! with exactly `g` gaps, all below `2g`. Only the members below `2g` are
//! stored; everything from `2g` on is implicitly a member.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("parameters ({0}, {1}) are not coprime")]
    NotCoprime(u64, u64),
    #[error("parameter must be positive, got {0}")]
    NonPositive(u64),
    #[error("pretzel index must be at least 1, got {0}")]
    PretzelIndex(u64),
    #[error("not an L-space cable: q = {q} < (2g-1)p = {bound}")]
    NotLSpaceCable { q: u64, bound: i128 },
    #[error("mu is undefined for the unknot")]
    UndefinedForUnknot,
    #[error("invalid formal semigroup: {0}")]
    Invalid(String),
    #[error("not an L-space Alexander polynomial: {0}")]
    NotLSpaceAlexander(String),
}

/// A validated formal semigroup.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SemigroupWire", into = "SemigroupWire")]
pub struct FormalSemigroup {
    genus: u64,
    /// `member[m]` for `0 <= m < 2g`
    member: Vec<bool>,
    /// `phi[m] = #(S ∩ [0, m))` for `0 <= m <= 2g`
    phi: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct SemigroupWire {
    genus: u64,
    small_elements: Vec<u64>,
}

impl TryFrom<SemigroupWire> for FormalSemigroup {
    type Error = SemigroupError;
    fn try_from(w: SemigroupWire) -> Result<Self, Self::Error> {
        FormalSemigroup::from_small_elements(w.genus, &w.small_elements)
    }
}

impl From<FormalSemigroup> for SemigroupWire {
    fn from(s: FormalSemigroup) -> Self {
        SemigroupWire { genus: s.genus, small_elements: s.small_elements().collect() }
    }
}

impl FormalSemigroup {
    /// `Z≥0`, the semigroup of the unknot.
    pub fn unknot() -> Self {
        FormalSemigroup { genus: 0, member: Vec::new(), phi: vec![0] }
    }

    /// Builds and validates a semigroup from its members below `2g`.
    pub fn from_small_elements(genus: u64, small: &[u64]) -> Result<Self, SemigroupError> {
        let two_g = 2 * genus as usize;
        let mut member = vec![false; two_g];
        for &m in small {
            let slot = member
                .get_mut(m as usize)
                .ok_or_else(|| SemigroupError::Invalid(format!("element {m} is not below 2g = {two_g}")))?;
            if *slot {
                return Err(SemigroupError::Invalid(format!("element {m} listed twice")));
            }
            *slot = true;
        }
        Self::from_membership(genus, member)
    }

    fn from_membership(genus: u64, member: Vec<bool>) -> Result<Self, SemigroupError> {
        debug_assert_eq!(member.len() as u64, 2 * genus);
        let mut phi = Vec::with_capacity(member.len() + 1);
        phi.push(0);
        for &m in &member {
            phi.push(phi.last().unwrap() + u64::from(m));
        }
        let s = FormalSemigroup { genus, member, phi };
        s.validate()?;
        Ok(s)
    }

    /// Checks `0 ∈ S`, `1 ∉ S`, the gap count and the symmetry `m ∈ S ⇔ 2g-1-m ∉ S`.
    pub fn validate(&self) -> Result<(), SemigroupError> {
        let g = self.genus as usize;
        if g == 0 {
            return Ok(());
        }
        if !self.member[0] {
            return Err(SemigroupError::Invalid("0 is not a member".into()));
        }
        if self.member[1] {
            return Err(SemigroupError::Invalid("1 is a member of a nontrivial formal semigroup".into()));
        }
        let gaps = self.member.iter().filter(|&&m| !m).count();
        if gaps != g {
            return Err(SemigroupError::Invalid(format!("{gaps} gaps but genus {g}")));
        }
        for m in 0..2 * g {
            if self.member[m] == self.member[2 * g - 1 - m] {
                return Err(SemigroupError::Invalid(format!(
                    "symmetry fails: {m} and {} are both {}",
                    2 * g - 1 - m,
                    if self.member[m] { "members" } else { "gaps" }
                )));
            }
        }
        Ok(())
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// Membership for any integer; negatives are never members.
    pub fn contains(&self, m: i64) -> bool {
        if m < 0 {
            return false;
        }
        self.member.get(m as usize).copied().unwrap_or(true)
    }

    /// Members below `2g`, ascending.
    pub fn small_elements(&self) -> impl Iterator<Item = u64> + '_ {
        self.member.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i as u64)
    }

    /// Gaps (all of them lie below `2g`), ascending.
    pub fn gaps(&self) -> impl Iterator<Item = u64> + '_ {
        self.member.iter().enumerate().filter(|(_, &m)| !m).map(|(i, _)| i as u64)
    }

    /// `φ(m) = #(S ∩ [0, m))`, extended by 0 for `m < 0` and `m - g` beyond `2g`.
    pub fn phi(&self, m: i64) -> i64 {
        if m <= 0 {
            return 0;
        }
        match self.phi.get(m as usize) {
            Some(&v) => v as i64,
            None => m - self.genus as i64,
        }
    }

    /// `min over 0 < m < 2g of 2φ(m)/m`.
    pub fn mu(&self) -> Result<Rational, SemigroupError> {
        if self.genus == 0 {
            return Err(SemigroupError::UndefinedForUnknot);
        }
        Ok((1..2 * self.genus as i64)
            .map(|m| Rational::frac(2 * self.phi(m), m))
            .min()
            .expect("genus >= 1 gives a nonempty range"))
    }
}

impl fmt::Display for FormalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems: Vec<String> = self.small_elements().map(|e| e.to_string()).collect();
        write!(f, "{{{}}} ∪ Z≥{}", elems.join(","), 2 * self.genus)
    }
}

impl fmt::Debug for FormalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn torus_genus(p: u64, q: u64) -> u64 {
    (p - 1) * (q - 1) / 2
}

/// The semigroup `⟨p, q⟩ = {ap + bq : a, b >= 0}` of the torus knot `T(p,q)`.
pub fn torus_semigroup(p: u64, q: u64) -> Result<FormalSemigroup, SemigroupError> {
    for v in [p, q] {
        if v == 0 {
            return Err(SemigroupError::NonPositive(v));
        }
    }
    if p.gcd(&q) != 1 {
        return Err(SemigroupError::NotCoprime(p, q));
    }
    let genus = torus_genus(p, q);
    let limit = 2 * genus;
    let mut member = vec![false; limit as usize];
    for a in (0..limit).step_by(p as usize) {
        for m in (a..limit).step_by(q as usize) {
            member[m as usize] = true;
        }
    }
    FormalSemigroup::from_membership(genus, member)
}

/// `{0,3,5,7,…,2n-1,2n+1,2n+2} ∪ Z≥2n+4` for the `(-2,3,2n+1)` pretzel knot.
pub fn pretzel_semigroup(n: u64) -> Result<FormalSemigroup, SemigroupError> {
    if n < 1 {
        return Err(SemigroupError::PretzelIndex(n));
    }
    let mut small = vec![0, 3];
    small.extend((5..2 * n).step_by(2));
    small.extend([2 * n + 1, 2 * n + 2]);
    small.dedup();
    FormalSemigroup::from_small_elements(n + 2, &small)
}

/// The formal semigroup of the `(p,q)`-cable, `pS + qZ≥0`.
///
/// `p = 1` is the identity cable. For `p >= 2` the cable must satisfy
/// `q >= (2g-1)p`; the result is validated before it is returned.
pub fn cable_semigroup(s: &FormalSemigroup, p: u64, q: u64) -> Result<FormalSemigroup, SemigroupError> {
    if p == 0 {
        return Err(SemigroupError::NonPositive(p));
    }
    if q == 0 {
        return Err(SemigroupError::NonPositive(q));
    }
    if p.gcd(&q) != 1 {
        return Err(SemigroupError::NotCoprime(p, q));
    }
    if p == 1 {
        return Ok(s.clone());
    }
    let g = s.genus();
    let bound = (2 * g as i128 - 1) * p as i128;
    if (q as i128) < bound {
        return Err(SemigroupError::NotLSpaceCable { q, bound });
    }
    let new_genus = p * g + torus_genus(p, q);
    let limit = 2 * new_genus;
    let mut member = vec![false; limit as usize];
    for a in (0..).take_while(|a| p * a < limit) {
        if !s.contains(a as i64) {
            continue;
        }
        for m in (p * a..limit).step_by(q as usize) {
            member[m as usize] = true;
        }
    }
    FormalSemigroup::from_membership(new_genus, member)
}
