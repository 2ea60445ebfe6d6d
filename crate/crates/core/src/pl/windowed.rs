use crate::rational::Rational;

use super::{PLFunction, PlError};

/// Closed window `[2i/p, 2(i+1)/p]`.
pub fn window_bounds(p: u64, i: u64) -> (Rational, Rational) {
    let pr = Rational::from(p);
    (Rational::from(2 * i) / &pr, Rational::from(2 * (i + 1)) / &pr)
}

/// One piece per window `[2i/p, 2(i+1)/p]`, `i = 0..p`.
///
/// Pieces are internally continuous but neighbours may disagree at the
/// shared boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowedPL {
    p: u64,
    pieces: Vec<PLFunction>,
}

impl WindowedPL {
    pub fn new(p: u64, pieces: Vec<PLFunction>) -> Result<Self, PlError> {
        if p < 1 {
            return Err(PlError::InvalidCopies);
        }
        if pieces.len() as u64 != p {
            return Err(PlError::Format(format!("expected {p} windows, got {}", pieces.len())));
        }
        for (i, piece) in pieces.iter().enumerate() {
            let (lo, hi) = window_bounds(p, i as u64);
            if piece.lo() != &lo || piece.hi() != &hi {
                return Err(PlError::DomainMismatch(lo, hi, piece.lo().clone(), piece.hi().clone()));
            }
        }
        Ok(WindowedPL { p, pieces })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn window(&self, i: u64) -> &PLFunction {
        &self.pieces[i as usize]
    }

    pub fn windows(&self) -> &[PLFunction] {
        &self.pieces
    }

    /// Index of the window used for `t`; boundaries belong to the left window.
    pub fn window_index(&self, t: &Rational) -> u64 {
        let scaled = t * Rational::from(self.p) / Rational::from(2);
        let mut i = scaled.floor();
        if Rational::from(i.clone()) == scaled {
            i -= 1;
        }
        let i: i64 = i.try_into().unwrap_or(0);
        i.clamp(0, self.p as i64 - 1) as u64
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational, PlError> {
        self.window(self.window_index(t)).eval(t)
    }

    /// Glues the windows into one function, failing at the first jump.
    pub fn to_continuous(&self) -> Result<PLFunction, PlError> {
        PLFunction::concat(&self.pieces)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn constant_windows(p: u64, values: &[i64]) -> WindowedPL {
        let pieces = (0..p)
            .map(|i| {
                let (lo, hi) = window_bounds(p, i);
                PLFunction::constant(Rational::from(values[i as usize]), lo, hi).unwrap()
            })
            .collect();
        WindowedPL::new(p, pieces).unwrap()
    }

    #[test]
    fn boundary_uses_left_window() {
        let w = constant_windows(3, &[1, 2, 3]);
        assert_eq!(w.eval(&r(0, 1)).unwrap(), r(1, 1));
        assert_eq!(w.eval(&r(2, 3)).unwrap(), r(1, 1));
        assert_eq!(w.eval(&r(7, 9)).unwrap(), r(2, 1));
        assert_eq!(w.eval(&r(4, 3)).unwrap(), r(2, 1));
        assert_eq!(w.eval(&r(2, 1)).unwrap(), r(3, 1));
    }

    #[test]
    fn jumps_are_allowed_until_glued() {
        let w = constant_windows(2, &[1, 2]);
        assert!(matches!(w.to_continuous(), Err(PlError::Discontinuity { .. })));
        let flat = constant_windows(2, &[4, 4]);
        assert_eq!(flat.to_continuous().unwrap().breakpoints().len(), 2);
    }

    #[test]
    fn rejects_misplaced_pieces() {
        let piece = PLFunction::constant(r(0, 1), r(0, 1), r(1, 1)).unwrap();
        assert!(WindowedPL::new(2, vec![piece.clone(), piece]).is_err());
    }
}
