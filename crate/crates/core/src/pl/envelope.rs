use crate::rational::Rational;

use super::{check_domain, PLFunction, PlError};

/// An affine function `t -> intercept + slope * t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line {
    pub slope: Rational,
    pub intercept: Rational,
}

impl Line {
    pub fn new(slope: Rational, intercept: Rational) -> Self {
        Line { slope, intercept }
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        &self.intercept + &self.slope * t
    }

    /// Abscissa where the two lines meet; `None` for parallel lines.
    pub fn crossing(&self, other: &Line) -> Option<Rational> {
        if self.slope == other.slope {
            return None;
        }
        Some((&self.intercept - &other.intercept) / (&other.slope - &self.slope))
    }
}

/// Pointwise maximum of `lines` over `[lo, hi]`.
///
/// Lines are sorted by slope (ties keep the larger intercept) and swept once
/// into the upper convex chain, so the whole computation is exact and
/// `O(n log n)`.
pub fn upper_envelope(lines: &[Line], lo: &Rational, hi: &Rational) -> Result<PLFunction, PlError> {
    if lines.is_empty() {
        return Err(PlError::NoLines);
    }
    check_domain(lo, hi)?;

    let mut sorted: Vec<&Line> = lines.iter().collect();
    sorted.sort_by(|a, b| a.slope.cmp(&b.slope).then(b.intercept.cmp(&a.intercept)));
    sorted.dedup_by(|later, earlier| later.slope == earlier.slope);

    // hull[k] is maximal on [cross[k-1], cross[k]]
    let mut hull: Vec<&Line> = Vec::with_capacity(sorted.len());
    let mut cross: Vec<Rational> = Vec::with_capacity(sorted.len());
    for line in sorted {
        while let Some(top) = hull.last() {
            let x = top.crossing(line).expect("slopes are distinct after dedup");
            match cross.last() {
                Some(prev) if &x <= prev => {
                    hull.pop();
                    cross.pop();
                }
                _ => {
                    cross.push(x);
                    break;
                }
            }
        }
        hull.push(line);
    }

    let start = cross.partition_point(|x| x <= lo);
    let mut points = vec![(lo.clone(), hull[start].eval(lo))];
    for (k, x) in cross.iter().enumerate().skip(start) {
        if x >= hi {
            break;
        }
        points.push((x.clone(), hull[k].eval(x)));
    }
    let end = cross.partition_point(|x| x < hi);
    points.push((hi.clone(), hull[end].eval(hi)));
    PLFunction::new(points)
}
