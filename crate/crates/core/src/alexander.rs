//! Alexander polynomials of L-space knots and the passage to and from
//! formal semigroups via `Δ(t) / (1 - t) = Σ_{s ∈ S} t^s`.

use std::fmt;

use crate::semigroup::{FormalSemigroup, SemigroupError};

/// A flat, palindromic polynomial with unit end coefficients and
/// alternating nonzero coefficients. Constant term first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlexanderPoly {
    coefficients: Vec<i64>,
}

fn reject(msg: impl Into<String>) -> SemigroupError {
    SemigroupError::NotLSpaceAlexander(msg.into())
}

impl AlexanderPoly {
    pub fn new(coefficients: Vec<i64>) -> Result<Self, SemigroupError> {
        let mut coefficients = coefficients;
        while coefficients.len() > 1 && coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            return Err(reject("empty polynomial"));
        }
        if coefficients.iter().any(|c| c.abs() > 1) {
            return Err(reject("not flat"));
        }
        let n = coefficients.len();
        if (0..n).any(|i| coefficients[i] != coefficients[n - 1 - i]) {
            return Err(reject("not palindromic"));
        }
        if !(n - 1).is_multiple_of(2) {
            return Err(reject("odd degree"));
        }
        if coefficients[0] != 1 {
            return Err(reject("constant and leading coefficients must be 1"));
        }
        let nonzero: Vec<i64> = coefficients.iter().copied().filter(|&c| c != 0).collect();
        if nonzero.windows(2).any(|w| w[0] == w[1]) {
            return Err(reject("nonzero coefficients do not alternate in sign"));
        }
        Ok(AlexanderPoly { coefficients })
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }
}

impl fmt::Display for AlexanderPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.coefficients.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let sep = if first { "" } else { " " };
            let body = match k {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, "{sep}{sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for AlexanderPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Δ = (1 - t) Σ_{s ∈ S, s < 2g} t^s + t^{2g}`.
pub fn alexander_from_semigroup(s: &FormalSemigroup) -> AlexanderPoly {
    let two_g = 2 * s.genus() as usize;
    let mut coefficients = vec![0i64; two_g + 1];
    for e in s.small_elements() {
        coefficients[e as usize] += 1;
        coefficients[e as usize + 1] -= 1;
    }
    coefficients[two_g] += 1;
    AlexanderPoly::new(coefficients).expect("a valid formal semigroup yields an L-space Alexander polynomial")
}

/// Coefficients of `Δ_K(t^p) · Δ_P(t)`, the Alexander polynomial of a `(p,q)`-cable
/// of `K` whose pattern torus knot has polynomial `Δ_P`.
pub fn cabling_product(companion: &AlexanderPoly, p: u64, pattern: &AlexanderPoly) -> Vec<i64> {
    let p = p as usize;
    let mut out = vec![0i64; companion.degree() * p + pattern.degree() + 1];
    for (i, a) in companion.coefficients().iter().enumerate().filter(|(_, a)| **a != 0) {
        for (j, b) in pattern.coefficients().iter().enumerate() {
            out[i * p + j] += a * b;
        }
    }
    out
}

/// Expands `Δ / (1 - t)` up to degree `2g` and reads off the semigroup.
pub fn semigroup_from_alexander(d: &AlexanderPoly) -> Result<FormalSemigroup, SemigroupError> {
    let two_g = d.degree();
    let mut partial = 0i64;
    let mut small = Vec::new();
    for (k, &c) in d.coefficients().iter().enumerate() {
        partial += c;
        match (k < two_g, partial) {
            (true, 1) => small.push(k as u64),
            (true, 0) => {}
            (false, 1) => {}
            _ => return Err(reject(format!("series coefficient {partial} at degree {k}"))),
        }
    }
    FormalSemigroup::from_small_elements(two_g as u64 / 2, &small)
}
