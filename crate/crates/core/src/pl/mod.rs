//! Exact piecewise-linear functions on subintervals of `[0, 2]`.
//!
//! Every [`PLFunction`] is stored in canonical form: strictly increasing
//! breakpoints with no three consecutive collinear points. Structural
//! equality is therefore functional equality.

mod envelope;
mod format;
mod windowed;

pub use envelope::{upper_envelope, Line};
pub use windowed::{window_bounds, WindowedPL};

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlError {
    #[error("no lines")]
    NoLines,
    #[error("invalid domain [{lo}, {hi}]: need 0 <= lo < hi <= 2")]
    InvalidDomain { lo: Rational, hi: Rational },
    #[error("a piecewise-linear function needs at least two breakpoints")]
    TooFewBreakpoints,
    #[error("breakpoints must be strictly increasing (at t = {0})")]
    NotIncreasing(Rational),
    #[error("t = {t} is outside the domain [{lo}, {hi}]")]
    OutOfDomain { t: Rational, lo: Rational, hi: Rational },
    #[error("domain mismatch: [{0}, {1}] vs [{2}, {3}]")]
    DomainMismatch(Rational, Rational, Rational, Rational),
    #[error("amalgamation needs f(0) = f(2), got {left} and {right}")]
    JunctionMismatch { left: Rational, right: Rational },
    #[error("number of copies must be at least 1")]
    InvalidCopies,
    #[error("pieces are not adjacent: one ends at {end}, the next starts at {start}")]
    NotAdjacent { end: Rational, start: Rational },
    #[error("discontinuity at t = {t}: {left} from the left, {right} from the right")]
    Discontinuity { t: Rational, left: Rational, right: Rational },
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("malformed input: {0}")]
    Format(String),
}

pub type Breakpoint = (Rational, Rational);

/// A continuous piecewise-linear function given by its breakpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PLFunction {
    points: Vec<Breakpoint>,
}

impl std::fmt::Debug for PLFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PLFunction[{}]", self.to_text())
    }
}

fn check_domain(lo: &Rational, hi: &Rational) -> Result<(), PlError> {
    if lo.is_negative() || hi > &Rational::from(2) || lo >= hi {
        return Err(PlError::InvalidDomain { lo: lo.clone(), hi: hi.clone() });
    }
    Ok(())
}

fn collinear(a: &Breakpoint, b: &Breakpoint, c: &Breakpoint) -> bool {
    (&b.1 - &a.1) * (&c.0 - &b.0) == (&c.1 - &b.1) * (&b.0 - &a.0)
}

fn interpolate(a: &Breakpoint, b: &Breakpoint, t: &Rational) -> Rational {
    &a.1 + (&b.1 - &a.1) * (t - &a.0) / (&b.0 - &a.0)
}

impl PLFunction {
    /// Builds a function from breakpoints, validating and canonicalizing them.
    pub fn new(points: Vec<Breakpoint>) -> Result<Self, PlError> {
        if points.len() < 2 {
            return Err(PlError::TooFewBreakpoints);
        }
        for w in points.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(PlError::NotIncreasing(w[1].0.clone()));
            }
        }
        check_domain(&points[0].0, &points[points.len() - 1].0)?;
        Ok(Self::canonical(points))
    }

    fn canonical(points: Vec<Breakpoint>) -> Self {
        let mut out: Vec<Breakpoint> = Vec::with_capacity(points.len());
        for p in points {
            while out.len() >= 2 && collinear(&out[out.len() - 2], &out[out.len() - 1], &p) {
                out.pop();
            }
            out.push(p);
        }
        PLFunction { points: out }
    }

    pub fn from_line(line: &Line, lo: Rational, hi: Rational) -> Result<Self, PlError> {
        check_domain(&lo, &hi)?;
        let (vlo, vhi) = (line.eval(&lo), line.eval(&hi));
        Ok(PLFunction { points: vec![(lo, vlo), (hi, vhi)] })
    }

    pub fn constant(value: Rational, lo: Rational, hi: Rational) -> Result<Self, PlError> {
        Self::from_line(&Line::new(Rational::zero(), value), lo, hi)
    }

    /// The zero function on `[0, 2]`.
    pub fn zero() -> Self {
        PLFunction { points: vec![(Rational::zero(), Rational::zero()), (Rational::from(2), Rational::zero())] }
    }

    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.points
    }

    pub fn lo(&self) -> &Rational {
        &self.points[0].0
    }

    pub fn hi(&self) -> &Rational {
        &self.points[self.points.len() - 1].0
    }

    pub fn is_full_domain(&self) -> bool {
        self.lo().is_zero() && self.hi() == &Rational::from(2)
    }

    fn same_domain(&self, other: &PLFunction) -> Result<(), PlError> {
        if self.lo() != other.lo() || self.hi() != other.hi() {
            return Err(PlError::DomainMismatch(
                self.lo().clone(),
                self.hi().clone(),
                other.lo().clone(),
                other.hi().clone(),
            ));
        }
        Ok(())
    }

    /// Exact value at `t` by linear interpolation on the containing piece.
    pub fn eval(&self, t: &Rational) -> Result<Rational, PlError> {
        if t < self.lo() || t > self.hi() {
            return Err(PlError::OutOfDomain { t: t.clone(), lo: self.lo().clone(), hi: self.hi().clone() });
        }
        let idx = self.points.partition_point(|p| &p.0 < t);
        let p = &self.points[idx];
        if &p.0 == t {
            return Ok(p.1.clone());
        }
        Ok(interpolate(&self.points[idx - 1], p, t))
    }

    /// Evaluates along a nondecreasing grid inside the domain in a single pass.
    fn eval_sorted(&self, grid: &[Rational]) -> Vec<Rational> {
        let mut idx = 1;
        grid.iter()
            .map(|t| {
                while idx < self.points.len() - 1 && &self.points[idx].0 < t {
                    idx += 1;
                }
                let (a, b) = (&self.points[idx - 1], &self.points[idx]);
                if &b.0 == t {
                    b.1.clone()
                } else if &a.0 == t {
                    a.1.clone()
                } else {
                    interpolate(a, b, t)
                }
            })
            .collect()
    }

    fn merged_grid(&self, other: &PLFunction) -> Vec<Rational> {
        let mut grid: Vec<Rational> = Vec::with_capacity(self.points.len() + other.points.len());
        let (mut i, mut j) = (0, 0);
        while i < self.points.len() || j < other.points.len() {
            let next = match (self.points.get(i), other.points.get(j)) {
                (Some(a), Some(b)) if a.0 < b.0 => {
                    i += 1;
                    a.0.clone()
                }
                (Some(a), Some(b)) if a.0 > b.0 => {
                    j += 1;
                    b.0.clone()
                }
                (Some(a), Some(_)) => {
                    i += 1;
                    j += 1;
                    a.0.clone()
                }
                (Some(a), None) => {
                    i += 1;
                    a.0.clone()
                }
                (None, Some(b)) => {
                    j += 1;
                    b.0.clone()
                }
                (None, None) => unreachable!(),
            };
            grid.push(next);
        }
        grid
    }

    /// Union of both breakpoint sets, for same-domain comparisons.
    pub fn common_grid(&self, other: &PLFunction) -> Result<Vec<Rational>, PlError> {
        self.same_domain(other)?;
        Ok(self.merged_grid(other))
    }

    pub fn pl_add(&self, other: &PLFunction) -> Result<PLFunction, PlError> {
        self.same_domain(other)?;
        let grid = self.merged_grid(other);
        let (fv, gv) = (self.eval_sorted(&grid), other.eval_sorted(&grid));
        let points = grid.into_iter().zip(fv.into_iter().zip(gv).map(|(a, b)| a + b)).collect();
        Ok(Self::canonical(points))
    }

    /// Pointwise maximum. Crossings strictly inside a common piece become breakpoints.
    pub fn pl_max(&self, other: &PLFunction) -> Result<PLFunction, PlError> {
        self.same_domain(other)?;
        let grid = self.merged_grid(other);
        let (fv, gv) = (self.eval_sorted(&grid), other.eval_sorted(&grid));
        let mut points: Vec<Breakpoint> = Vec::with_capacity(grid.len() * 2);
        for k in 0..grid.len() {
            if k > 0 {
                let da = &fv[k - 1] - &gv[k - 1];
                let db = &fv[k] - &gv[k];
                if (da.is_positive() && db.is_negative()) || (da.is_negative() && db.is_positive()) {
                    let t = &grid[k - 1] + (&grid[k] - &grid[k - 1]) * &da / (&da - &db);
                    let v =
                        interpolate(&(grid[k - 1].clone(), fv[k - 1].clone()), &(grid[k].clone(), fv[k].clone()), &t);
                    points.push((t, v));
                }
            }
            points.push((grid[k].clone(), fv[k].clone().max(gv[k].clone())));
        }
        Ok(Self::canonical(points))
    }

    pub fn scale(&self, c: &Rational) -> PLFunction {
        Self::canonical(self.points.iter().map(|(t, v)| (t.clone(), v * c)).collect())
    }

    pub fn shift(&self, c: &Rational) -> PLFunction {
        PLFunction { points: self.points.iter().map(|(t, v)| (t.clone(), v + c)).collect() }
    }

    /// The function restricted to `[lo, hi]`, which must lie inside the domain.
    pub fn restrict(&self, lo: &Rational, hi: &Rational) -> Result<PLFunction, PlError> {
        check_domain(lo, hi)?;
        if lo < self.lo() || hi > self.hi() {
            return Err(PlError::DomainMismatch(self.lo().clone(), self.hi().clone(), lo.clone(), hi.clone()));
        }
        let mut points = vec![(lo.clone(), self.eval(lo)?)];
        points.extend(self.points.iter().filter(|(t, _)| t > lo && t < hi).cloned());
        points.push((hi.clone(), self.eval(hi)?));
        Ok(Self::canonical(points))
    }

    /// `g(t) = f(scale * t + offset)`, defined where the argument lies in the domain of `f`.
    pub fn pullback(&self, scale: &Rational, offset: &Rational) -> Result<PLFunction, PlError> {
        if scale.is_zero() {
            return Err(PlError::ZeroScale);
        }
        let mut points: Vec<Breakpoint> = self.points.iter().map(|(u, v)| ((u - offset) / scale, v.clone())).collect();
        if scale.is_negative() {
            points.reverse();
        }
        PLFunction::new(points)
    }

    /// `g(t) = f(2 - t)`.
    pub fn reflect(&self) -> PLFunction {
        self.pullback(&Rational::from(-1), &Rational::from(2))
            .expect("reflection maps subintervals of [0,2] onto subintervals of [0,2]")
    }

    /// `p` shrunken copies of `f` laid end to end: `g(t) = f(pt - 2i)` on `[2i/p, 2(i+1)/p]`.
    pub fn amalgamate(&self, p: u64) -> Result<PLFunction, PlError> {
        if p < 1 {
            return Err(PlError::InvalidCopies);
        }
        if !self.is_full_domain() {
            return Err(PlError::DomainMismatch(
                self.lo().clone(),
                self.hi().clone(),
                Rational::zero(),
                Rational::from(2),
            ));
        }
        let (first, last) = (&self.points[0].1, &self.points[self.points.len() - 1].1);
        if first != last {
            return Err(PlError::JunctionMismatch { left: first.clone(), right: last.clone() });
        }
        let pr = Rational::from(p);
        let mut points: Vec<Breakpoint> = Vec::with_capacity(self.points.len() * p as usize);
        for i in 0..p {
            let shift = Rational::from(2 * i);
            let skip = usize::from(i > 0);
            points.extend(self.points[skip..].iter().map(|(s, v)| ((s + &shift) / &pr, v.clone())));
        }
        Ok(Self::canonical(points))
    }

    /// Joins functions on adjacent domains, insisting on continuity at every junction.
    pub fn concat(pieces: &[PLFunction]) -> Result<PLFunction, PlError> {
        let (first, rest) = pieces.split_first().ok_or(PlError::TooFewBreakpoints)?;
        let mut points = first.points.clone();
        for piece in rest {
            let (end_t, end_v) = points.last().expect("nonempty");
            let (start_t, start_v) = &piece.points[0];
            if end_t != start_t {
                return Err(PlError::NotAdjacent { end: end_t.clone(), start: start_t.clone() });
            }
            if end_v != start_v {
                return Err(PlError::Discontinuity { t: end_t.clone(), left: end_v.clone(), right: start_v.clone() });
            }
            points.extend(piece.points[1..].iter().cloned());
        }
        Ok(Self::canonical(points))
    }

    /// Exact trapezoid sum over the pieces.
    pub fn integrate(&self) -> Rational {
        let two = Rational::from(2);
        self.points.windows(2).map(|w| (&w[1].0 - &w[0].0) * (&w[0].1 + &w[1].1) / &two).sum()
    }

    /// Slopes of the pieces, left to right.
    pub fn slopes(&self) -> Vec<Rational> {
        self.points.windows(2).map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0)).collect()
    }

    /// Slope of the first piece.
    pub fn right_derivative_at_zero(&self) -> Rational {
        self.slopes().swap_remove(0)
    }

    /// Slopes nondecreasing left to right.
    pub fn is_convex(&self) -> bool {
        self.slopes().windows(2).all(|w| w[0] <= w[1])
    }

    /// The first point of the common breakpoint grid where the two functions differ.
    pub fn first_difference(&self, other: &PLFunction) -> Result<Option<(Rational, Rational, Rational)>, PlError> {
        let grid = self.common_grid(other)?;
        let (fv, gv) = (self.eval_sorted(&grid), other.eval_sorted(&grid));
        Ok(grid.into_iter().zip(fv.into_iter().zip(gv)).find(|(_, (a, b))| a != b).map(|(t, (a, b))| (t, a, b)))
    }

    /// The first grid point where `self > other`, if any; `None` means `self <= other` everywhere.
    pub fn first_excess_over(&self, other: &PLFunction) -> Result<Option<(Rational, Rational, Rational)>, PlError> {
        let grid = self.common_grid(other)?;
        let (fv, gv) = (self.eval_sorted(&grid), other.eval_sorted(&grid));
        Ok(grid.into_iter().zip(fv.into_iter().zip(gv)).find(|(_, (a, b))| a > b).map(|(t, (a, b))| (t, a, b)))
    }
}
