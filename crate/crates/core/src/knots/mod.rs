//! Knot expressions and the predicates that only depend on their shape.

mod numtheory;
mod parse;

pub use numtheory::{
    continued_fraction, dedekind_sum, signature_integral_torus, signature_integral_torus_dedekind, ContinuedFraction,
    NumberTheoryError,
};
pub use parse::{parse_knot, ParseError};

use std::fmt;

use serde::{Serialize, Serializer};

use crate::semigroup::{cable_semigroup, pretzel_semigroup, torus_semigroup, FormalSemigroup, SemigroupError};

/// Unknot, torus knot `T(p,q)`, `(-2,3,2n+1)` pretzel knot, or a `(p,q)`-cable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KnotExpr {
    Unknot,
    Torus { p: u64, q: u64 },
    Pretzel { n: u64 },
    Cable { companion: Box<KnotExpr>, p: u64, q: u64 },
}

impl KnotExpr {
    pub fn torus(p: u64, q: u64) -> Self {
        KnotExpr::Torus { p, q }
    }

    pub fn cable(companion: KnotExpr, p: u64, q: u64) -> Self {
        KnotExpr::Cable { companion: Box::new(companion), p, q }
    }

    /// Number of nested cabling operations.
    pub fn depth(&self) -> usize {
        match self {
            KnotExpr::Cable { companion, .. } => 1 + companion.depth(),
            _ => 0,
        }
    }

    /// Seifert genus, assuming every cable level is an L-space cable
    /// (so that the genus is half the degree of the Alexander polynomial).
    pub fn genus(&self) -> u64 {
        match self {
            KnotExpr::Unknot => 0,
            KnotExpr::Torus { p, q } => (p - 1) * (q - 1) / 2,
            KnotExpr::Pretzel { n } => n + 2,
            KnotExpr::Cable { companion, p, q } => {
                if *p == 1 {
                    companion.genus()
                } else {
                    p * companion.genus() + (p - 1) * (q - 1) / 2
                }
            }
        }
    }

    /// A cable is an L-space knot iff its companion is and `q >= (2g-1)p`, checked at every level.
    pub fn is_lspace(&self) -> LSpaceVerdict {
        match self {
            KnotExpr::Unknot | KnotExpr::Torus { .. } | KnotExpr::Pretzel { .. } => {
                LSpaceVerdict { is_lspace: true, reason: format!("{self} is an L-space knot") }
            }
            KnotExpr::Cable { companion, p, q } => {
                let inner = companion.is_lspace();
                if !inner.is_lspace {
                    return inner;
                }
                if *p == 1 {
                    return LSpaceVerdict {
                        is_lspace: true,
                        reason: format!("{self} is the identity cable of an L-space knot"),
                    };
                }
                let g = companion.genus() as i128;
                let bound = (2 * g - 1) * *p as i128;
                if (*q as i128) >= bound {
                    LSpaceVerdict {
                        is_lspace: true,
                        reason: format!("{self}: (2g-1)p = {bound} <= q = {q} with g = {g}"),
                    }
                } else {
                    LSpaceVerdict {
                        is_lspace: false,
                        reason: format!("{self}: q = {q} < (2g-1)p = {bound} with g = {g}"),
                    }
                }
            }
        }
    }

    /// The formal semigroup, built recursively from the torus, pretzel and cable constructions.
    pub fn semigroup(&self) -> Result<FormalSemigroup, SemigroupError> {
        match self {
            KnotExpr::Unknot => Ok(FormalSemigroup::unknot()),
            KnotExpr::Torus { p, q } => torus_semigroup(*p, *q),
            KnotExpr::Pretzel { n } => pretzel_semigroup(*n),
            KnotExpr::Cable { companion, p, q } => cable_semigroup(&companion.semigroup()?, *p, *q),
        }
    }
}

pub fn genus(k: &KnotExpr) -> u64 {
    k.genus()
}

pub fn is_lspace(k: &KnotExpr) -> LSpaceVerdict {
    k.is_lspace()
}

pub fn semigroup_of(k: &KnotExpr) -> Result<FormalSemigroup, SemigroupError> {
    k.semigroup()
}

/// The answer of [`KnotExpr::is_lspace`] and the condition it rests on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LSpaceVerdict {
    pub is_lspace: bool,
    pub reason: String,
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => write!(f, "unknot"),
            KnotExpr::Torus { p, q } => write!(f, "torus({p},{q})"),
            KnotExpr::Pretzel { n } => write!(f, "pretzel({n})"),
            KnotExpr::Cable { companion, p, q } => write!(f, "cable({companion};{p},{q})"),
        }
    }
}

impl Serialize for KnotExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl std::str::FromStr for KnotExpr {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_knot(s)
    }
}
