//! Continued fractions, Dedekind sums and the torus-knot signature integral.

use num_integer::Integer;
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberTheoryError {
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("arguments must be positive")]
    NonPositive,
    #[error("invalid continued fraction: {0}")]
    InvalidExpansion(String),
}

/// A non-negative continued fraction `[a_1, ..., a_n]` together with the
/// denominators `p_i` of its tails `[a_i, ..., a_n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    coefficients: Vec<u64>,
    tail_denominators: Vec<u64>,
}

impl ContinuedFraction {
    /// Accepts any expansion with `a_i >= 1` past the first entry,
    /// including the non-greedy `[..., a_n - 1, 1]` form.
    pub fn from_coefficients(coefficients: Vec<u64>) -> Result<Self, NumberTheoryError> {
        if coefficients.is_empty() {
            return Err(NumberTheoryError::InvalidExpansion("no coefficients".into()));
        }
        if coefficients[1..].contains(&0) {
            return Err(NumberTheoryError::InvalidExpansion("zero coefficient after the first".into()));
        }
        let mut tails = vec![0u64; coefficients.len()];
        let mut tail: Option<Rational> = None;
        for (i, &a) in coefficients.iter().enumerate().rev() {
            let value = match &tail {
                None => Rational::from(a),
                Some(x) => Rational::from(a) + x.recip(),
            };
            tails[i] = value.denom().try_into().expect("denominator fits in u64");
            tail = Some(value);
        }
        Ok(ContinuedFraction { coefficients, tail_denominators: tails })
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn tail_denominators(&self) -> &[u64] {
        &self.tail_denominators
    }

    /// Pairs `(a_i, p_i)`.
    pub fn terms(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.coefficients.iter().copied().zip(self.tail_denominators.iter().copied())
    }

    pub fn coefficient_sum(&self) -> u64 {
        self.coefficients.iter().sum()
    }

    /// Folds the expansion back into a reduced fraction.
    pub fn value(&self) -> Rational {
        let mut acc = Rational::from(*self.coefficients.last().expect("nonempty"));
        for &a in self.coefficients.iter().rev().skip(1) {
            acc = Rational::from(a) + acc.recip();
        }
        acc
    }

    /// The same number written as `[..., a_n - 1, 1]`, if `a_n >= 2`.
    pub fn alternative(&self) -> Option<ContinuedFraction> {
        let last = *self.coefficients.last()?;
        if last < 2 {
            return None;
        }
        let mut coefficients = self.coefficients.clone();
        *coefficients.last_mut().unwrap() = last - 1;
        coefficients.push(1);
        ContinuedFraction::from_coefficients(coefficients).ok()
    }
}

fn check_coprime(p: u64, q: u64) -> Result<(), NumberTheoryError> {
    if p == 0 || q == 0 {
        return Err(NumberTheoryError::NonPositive);
    }
    if p.gcd(&q) != 1 {
        return Err(NumberTheoryError::NotCoprime(p, q));
    }
    Ok(())
}

/// Greedy floor expansion of `q/p`.
pub fn continued_fraction(q: u64, p: u64) -> Result<ContinuedFraction, NumberTheoryError> {
    check_coprime(p, q)?;
    let (mut num, mut den) = (q, p);
    let mut coefficients = Vec::new();
    while den != 0 {
        coefficients.push(num / den);
        (num, den) = (den, num % den);
    }
    ContinuedFraction::from_coefficients(coefficients)
}

fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        Rational::zero()
    } else {
        x - Rational::from(x.floor()) - Rational::frac(1, 2)
    }
}

/// `s(a,b) = Σ_{k=1}^{b-1} ((k/b)) ((ka/b))`.
pub fn dedekind_sum(a: i64, b: u64) -> Result<Rational, NumberTheoryError> {
    if b == 0 {
        return Err(NumberTheoryError::NonPositive);
    }
    if a.unsigned_abs().gcd(&b) != 1 {
        return Err(NumberTheoryError::NotCoprime(a.unsigned_abs(), b));
    }
    let b = b as i64;
    Ok((1..b).map(|k| sawtooth(&Rational::frac(k, b)) * sawtooth(&Rational::frac(k * a, b))).sum())
}

/// `-(1/3)(pq - p/q - q/p + 1/(pq))`.
pub fn signature_integral_torus(p: u64, q: u64) -> Result<Rational, NumberTheoryError> {
    check_coprime(p, q)?;
    let (p, q) = (p as i64, q as i64);
    let inner = Rational::from(p * q) - Rational::frac(p, q) - Rational::frac(q, p) + Rational::frac(1, p * q);
    Ok(-(inner / Rational::from(3)))
}

/// `4(s(q,p) + s(p,q) - s(1,pq))`.
pub fn signature_integral_torus_dedekind(p: u64, q: u64) -> Result<Rational, NumberTheoryError> {
    check_coprime(p, q)?;
    let sum = dedekind_sum(q as i64, p)? + dedekind_sum(p as i64, q)? - dedekind_sum(1, p * q)?;
    Ok(Rational::from(4) * sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansions() {
        let cf = continued_fraction(35, 3).unwrap();
        assert_eq!(cf.coefficients(), &[11, 1, 2]);
        assert_eq!(cf.tail_denominators(), &[3, 2, 1]);
        assert_eq!(cf.value(), Rational::frac(35, 3));

        let cf = continued_fraction(7, 3).unwrap();
        assert_eq!(cf.coefficients(), &[2, 3]);
        assert_eq!(cf.tail_denominators(), &[3, 1]);
        assert_eq!(cf.coefficient_sum(), 5);

        assert_eq!(continued_fraction(9, 1).unwrap().coefficients(), &[9]);
        assert_eq!(continued_fraction(2, 5).unwrap().coefficients(), &[0, 2, 2]);
        assert_eq!(continued_fraction(17, 2).unwrap().coefficients(), &[8, 2]);
        assert!(matches!(continued_fraction(6, 4), Err(NumberTheoryError::NotCoprime(4, 6))));
    }

    #[test]
    fn alternative_expansion() {
        let cf = continued_fraction(7, 3).unwrap();
        let alt = cf.alternative().unwrap();
        assert_eq!(alt.coefficients(), &[2, 2, 1]);
        assert_eq!(alt.tail_denominators(), &[3, 1, 1]);
        assert_eq!(alt.value(), cf.value());
        assert!(ContinuedFraction::from_coefficients(vec![1, 0, 2]).is_err());
    }

    #[test]
    fn tail_recursion_and_derivative_sums() {
        for q in 2..=30u64 {
            for p in 2..q {
                let Ok(cf) = continued_fraction(q, p) else { continue };
                let terms: Vec<(u64, u64)> = cf.terms().collect();
                assert_eq!(terms.iter().map(|(a, pi)| a * pi * (pi - 1)).sum::<u64>(), (p - 1) * (q - 1));
                assert_eq!(terms.iter().map(|(a, pi)| a * pi).sum::<u64>(), q + p - 1);
                let pis = cf.tail_denominators();
                for i in 1..pis.len() {
                    let next = pis.get(i + 1).copied().unwrap_or(0);
                    assert_eq!(pis[i - 1], cf.coefficients()[i] * pis[i] + next);
                }
            }
        }
    }

    #[test]
    fn dedekind_values() {
        assert_eq!(dedekind_sum(1, 2).unwrap(), Rational::zero());
        assert_eq!(dedekind_sum(1, 3).unwrap(), Rational::frac(1, 18));
        assert_eq!(dedekind_sum(2, 3).unwrap(), Rational::frac(-1, 18));
        assert_eq!(dedekind_sum(-1, 3).unwrap(), Rational::frac(-1, 18));
        assert_eq!(dedekind_sum(5, 1).unwrap(), Rational::zero());
        assert!(dedekind_sum(2, 4).is_err());
    }

    #[test]
    fn signature_integrals() {
        assert_eq!(signature_integral_torus(2, 3).unwrap(), Rational::frac(-4, 3));
        assert_eq!(signature_integral_torus_dedekind(2, 3).unwrap(), Rational::frac(-4, 3));
        assert_eq!(signature_integral_torus(1, 7).unwrap(), Rational::zero());
        let expected = -(Rational::from(21) - Rational::frac(3, 7) - Rational::frac(7, 3) + Rational::frac(1, 21))
            / Rational::from(3);
        assert_eq!(signature_integral_torus(3, 7).unwrap(), expected);
        assert_eq!(signature_integral_torus_dedekind(3, 7).unwrap(), expected);
        assert!(signature_integral_torus(3, 9).is_err());
    }
}
