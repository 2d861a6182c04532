//! Intervals with open or closed endpoints, their normalized finite unions, and boxes.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::Error;
use crate::scalar::Scalar;

/// An interval of the rational line. Open and closed endpoints are tracked exactly.
///
/// Empty intervals all share one canonical representation (`(0,0)`, both ends open).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: Scalar,
    hi: Scalar,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    pub fn new(lo: Scalar, hi: Scalar, lo_closed: bool, hi_closed: bool) -> Interval {
        let empty = match lo.cmp(&hi) {
            Ordering::Greater => true,
            Ordering::Equal => !(lo_closed && hi_closed),
            Ordering::Less => false,
        };
        if empty {
            Interval::empty()
        } else {
            Interval { lo, hi, lo_closed, hi_closed }
        }
    }

    pub fn empty() -> Interval {
        Interval {
            lo: Scalar::zero(),
            hi: Scalar::zero(),
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn closed(lo: Scalar, hi: Scalar) -> Interval {
        Interval::new(lo, hi, true, true)
    }

    pub fn open(lo: Scalar, hi: Scalar) -> Interval {
        Interval::new(lo, hi, false, false)
    }

    /// `[lo, hi)`
    pub fn closed_open(lo: Scalar, hi: Scalar) -> Interval {
        Interval::new(lo, hi, true, false)
    }

    /// `(lo, hi]`
    pub fn open_closed(lo: Scalar, hi: Scalar) -> Interval {
        Interval::new(lo, hi, false, true)
    }

    pub fn point(x: Scalar) -> Interval {
        Interval::new(x.clone(), x, true, true)
    }

    pub fn unit() -> Interval {
        Interval::closed(Scalar::zero(), Scalar::one())
    }

    pub fn is_empty(&self) -> bool {
        !self.lo_closed && !self.hi_closed && self.lo == self.hi
    }

    pub fn is_point(&self) -> bool {
        !self.is_empty() && self.lo == self.hi
    }

    pub fn lo(&self) -> &Scalar {
        &self.lo
    }

    pub fn hi(&self) -> &Scalar {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn width(&self) -> Scalar {
        if self.is_empty() {
            Scalar::zero()
        } else {
            &self.hi - &self.lo
        }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        if self.is_empty() {
            return false;
        }
        let above = match x.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        let below = match x.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        above && below
    }

    pub fn intersect(&self, other: &Interval) -> Interval {
        if self.is_empty() || other.is_empty() {
            return Interval::empty();
        }
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Less => (other.lo.clone(), other.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (other.hi.clone(), other.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Interval::new(lo, hi, lo_closed, hi_closed)
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        !self.intersect(other).is_empty()
    }

    /// Topological closure `[lo, hi]`.
    pub fn closure(&self) -> Interval {
        if self.is_empty() {
            return Interval::empty();
        }
        Interval::closed(self.lo.clone(), self.hi.clone())
    }

    /// A point of the interval (the midpoint, or the single point of a degenerate interval).
    pub fn sample(&self) -> Option<Scalar> {
        if self.is_empty() {
            None
        } else {
            Some(self.lo.midpoint(&self.hi))
        }
    }

    /// Splits at the midpoint into `[lo, mid)` and `[mid, hi]`, preserving outer endpoint types.
    pub fn bisect(&self) -> (Interval, Interval) {
        let mid = self.lo.midpoint(&self.hi);
        (
            Interval::new(self.lo.clone(), mid.clone(), self.lo_closed, false),
            Interval::new(mid, self.hi.clone(), true, self.hi_closed),
        )
    }

    /// Image under `x -> slope * x + offset`. A negative slope swaps the endpoint types.
    pub fn affine(&self, slope: &Scalar, offset: &Scalar) -> Interval {
        if self.is_empty() {
            return Interval::empty();
        }
        let a = slope * &self.lo + offset;
        let b = slope * &self.hi + offset;
        match crate::scalar::sign(slope) {
            Ordering::Greater => Interval::new(a, b, self.lo_closed, self.hi_closed),
            Ordering::Less => Interval::new(b, a, self.hi_closed, self.lo_closed),
            Ordering::Equal => Interval::point(offset.clone()),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo);
        }
        write!(
            f,
            "{}{},{}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Where the supremum (or infimum) of a set sits and whether the set attains it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extremum {
    pub value: Scalar,
    pub attained: bool,
}

/// A finite union of pairwise disjoint, non-adjacent intervals sorted by left endpoint.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> IntervalSet {
        IntervalSet { parts: Vec::new() }
    }

    pub fn from_interval(interval: Interval) -> IntervalSet {
        IntervalSet::normalize(alloc::vec![interval])
    }

    pub fn from_points<I: IntoIterator<Item = Scalar>>(points: I) -> IntervalSet {
        IntervalSet::normalize(points.into_iter().map(Interval::point).collect())
    }

    /// Builds the unique normal form of the union of `parts`.
    pub fn normalize(mut parts: Vec<Interval>) -> IntervalSet {
        parts.retain(|p| !p.is_empty());
        // closed left endpoints sort first at equal lo
        parts.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
        for p in parts {
            if let Some(last) = out.last_mut() {
                let touches = match last.hi.cmp(&p.lo) {
                    Ordering::Greater => true,
                    Ordering::Equal => last.hi_closed || p.lo_closed,
                    Ordering::Less => false,
                };
                if touches {
                    match last.hi.cmp(&p.hi) {
                        Ordering::Less => {
                            last.hi = p.hi;
                            last.hi_closed = p.hi_closed;
                        }
                        Ordering::Equal => last.hi_closed |= p.hi_closed,
                        Ordering::Greater => {}
                    }
                    continue;
                }
            }
            out.push(p);
        }
        IntervalSet { parts: out }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Interval> {
        self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let a = &self.parts[i];
            let b = &other.parts[j];
            let c = a.intersect(b);
            if !c.is_empty() {
                out.push(c);
            }
            // advance whichever ends first
            let a_first = match a.hi.cmp(&b.hi) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => !a.hi_closed || b.hi_closed,
            };
            if a_first {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet::normalize(out)
    }

    pub fn intersect_interval(&self, other: &Interval) -> IntervalSet {
        let parts = self.parts.iter().map(|p| p.intersect(other)).collect();
        IntervalSet::normalize(parts)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        IntervalSet::normalize(parts)
    }

    pub fn intersects_interval(&self, other: &Interval) -> bool {
        self.parts.iter().any(|p| p.intersects(other))
    }

    /// Smallest interval containing the set.
    pub fn hull(&self) -> Interval {
        match (self.parts.first(), self.parts.last()) {
            (Some(a), Some(b)) => Interval::new(a.lo.clone(), b.hi.clone(), a.lo_closed, b.hi_closed),
            _ => Interval::empty(),
        }
    }

    pub fn sup(&self) -> Option<Extremum> {
        self.parts.last().map(|p| Extremum {
            value: p.hi.clone(),
            attained: p.hi_closed,
        })
    }

    pub fn inf(&self) -> Option<Extremum> {
        self.parts.first().map(|p| Extremum {
            value: p.lo.clone(),
            attained: p.lo_closed,
        })
    }

    /// Total length.
    pub fn measure(&self) -> Scalar {
        self.parts.iter().fold(Scalar::zero(), |acc, p| acc + p.width())
    }

    pub fn affine(&self, slope: &Scalar, offset: &Scalar) -> IntervalSet {
        IntervalSet::normalize(self.parts.iter().map(|p| p.affine(slope, offset)).collect())
    }

    /// Largest denominator bit length among the endpoints.
    pub fn max_denom_bits(&self) -> u64 {
        self.parts
            .iter()
            .map(|p| p.lo.denom_bits().max(p.hi.denom_bits()))
            .max()
            .unwrap_or(0)
    }

    /// Dyadic rounding of every endpoint to `bits` fractional bits.
    ///
    /// `outward` yields a superset (endpoints moved away, made open where they moved);
    /// otherwise a subset (endpoints moved inward, made closed where they moved).
    pub fn round_dyadic(&self, bits: u32, outward: bool) -> IntervalSet {
        let mut parts = Vec::with_capacity(self.parts.len());
        for p in &self.parts {
            let (lo, lo_closed, hi, hi_closed) = if outward {
                let lo = p.lo.floor_dyadic(bits);
                let hi = p.hi.ceil_dyadic(bits);
                let lc = if lo == p.lo { p.lo_closed } else { false };
                let hc = if hi == p.hi { p.hi_closed } else { false };
                // an outward-rounded open endpoint still contains the old closed one
                (lo, lc, hi, hc)
            } else {
                let lo = p.lo.ceil_dyadic(bits);
                let hi = p.hi.floor_dyadic(bits);
                let lc = if lo == p.lo { p.lo_closed } else { true };
                let hc = if hi == p.hi { p.hi_closed } else { true };
                (lo, lc, hi, hc)
            };
            if outward && (lo != p.lo || hi != p.hi) {
                // widening a degenerate point keeps it inside an open neighbourhood
                parts.push(Interval::new(lo, hi, lo_closed, hi_closed));
            } else {
                parts.push(Interval::new(lo, hi, lo_closed, hi_closed));
            }
        }
        IntervalSet::normalize(parts)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            write!(f, "{}", p)?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An axis-aligned box: one interval per coordinate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GridBox {
    sides: Vec<Interval>,
}

impl GridBox {
    pub fn new(sides: Vec<Interval>) -> Result<GridBox, Error> {
        if sides.is_empty() {
            return Err(Error::InvalidInput("a box needs at least one side"));
        }
        Ok(GridBox { sides })
    }

    pub fn sides(&self) -> &[Interval] {
        &self.sides
    }

    pub fn arity(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.iter().any(Interval::is_empty)
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        x.len() == self.sides.len() && self.sides.iter().zip(x).all(|(s, v)| s.contains(v))
    }

    pub fn intersects(&self, other: &GridBox) -> Result<bool, Error> {
        if self.arity() != other.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: other.arity(),
            });
        }
        Ok(self.sides.iter().zip(&other.sides).all(|(a, b)| a.intersects(b)))
    }

    /// Index of the widest side (first one on ties).
    pub(crate) fn widest_side(&self) -> usize {
        let mut best = 0;
        let mut width = self.sides[0].width();
        for (i, s) in self.sides.iter().enumerate().skip(1) {
            let w = s.width();
            if w > width {
                width = w;
                best = i;
            }
        }
        best
    }

    pub(crate) fn with_side(&self, index: usize, side: Interval) -> GridBox {
        let mut sides = self.sides.clone();
        sides[index] = side;
        GridBox { sides }
    }
}

/// Free-function form of [`IntervalSet::intersect`].
pub fn intersect(a: &IntervalSet, b: &IntervalSet) -> IntervalSet {
    a.intersect(b)
}

/// Free-function form of [`IntervalSet::normalize`].
pub fn normalize(parts: Vec<Interval>) -> IntervalSet {
    IntervalSet::normalize(parts)
}

/// True iff every coordinate pair of sides intersects.
pub fn box_intersects(a: &GridBox, b: &GridBox) -> Result<bool, Error> {
    a.intersects(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use alloc::vec;

    fn cl(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::closed(q(a.0, a.1), q(b.0, b.1))
    }

    #[test]
    fn intersect_examples() {
        let a = IntervalSet::from_interval(cl((0, 1), (1, 1)));
        let b = IntervalSet::from_interval(cl((1, 2), (3, 4)));
        assert_eq!(a.intersect(&b), b);

        let a = IntervalSet::normalize(vec![cl((0, 1), (1, 4)), cl((1, 2), (1, 1))]);
        let b = IntervalSet::from_interval(cl((1, 8), (5, 8)));
        let expect = IntervalSet::normalize(vec![cl((1, 8), (1, 4)), cl((1, 2), (5, 8))]);
        assert_eq!(a.intersect(&b), expect);

        let a = IntervalSet::from_interval(Interval::closed_open(q(0, 1), q(1, 2)));
        let b = IntervalSet::from_interval(cl((1, 2), (1, 1)));
        assert!(a.intersect(&b).is_empty());
    }

    #[test]
    fn normalize_examples() {
        let s = IntervalSet::normalize(vec![cl((0, 1), (1, 2)), cl((1, 2), (1, 1))]);
        assert_eq!(s.parts(), &[cl((0, 1), (1, 1))]);
        assert!(IntervalSet::normalize(vec![]).is_empty());
        let s = IntervalSet::normalize(vec![cl((1, 3), (2, 3)), cl((0, 1), (1, 4))]);
        assert_eq!(s.parts(), &[cl((0, 1), (1, 4)), cl((1, 3), (2, 3))]);
    }

    #[test]
    fn open_touching_parts_stay_apart() {
        let s = IntervalSet::normalize(vec![
            Interval::closed_open(q(0, 1), q(1, 2)),
            Interval::open_closed(q(1, 2), q(1, 1)),
        ]);
        assert_eq!(s.parts().len(), 2);
        assert!(!s.contains(&q(1, 2)));
        let filled = s.union(&IntervalSet::from_points([q(1, 2)]));
        assert_eq!(filled.parts(), &[cl((0, 1), (1, 1))]);
    }

    #[test]
    fn box_examples() {
        let half = q(1, 2);
        let a = GridBox::new(vec![cl((0, 1), (1, 2)), cl((0, 1), (1, 2))]).unwrap();
        let b = GridBox::new(vec![cl((1, 2), (1, 1)), cl((0, 1), (1, 1))]).unwrap();
        assert!(box_intersects(&a, &b).unwrap());
        let a = GridBox::new(vec![Interval::closed_open(q(0, 1), half), cl((0, 1), (1, 1))]).unwrap();
        assert!(!box_intersects(&a, &b).unwrap());
        let a = GridBox::new(vec![cl((2, 3), (1, 1)), cl((0, 1), (1, 3))]).unwrap();
        let b = GridBox::new(vec![cl((0, 1), (1, 3)), cl((2, 3), (1, 1))]).unwrap();
        assert!(!box_intersects(&a, &b).unwrap());
        let c = GridBox::new(vec![cl((0, 1), (1, 1))]).unwrap();
        assert!(box_intersects(&a, &c).is_err());
    }

    #[test]
    fn affine_flips_endpoint_types() {
        let i = Interval::closed_open(q(0, 1), q(1, 4));
        let j = i.affine(&q(-1, 1), &q(1, 1));
        assert_eq!(j, Interval::open_closed(q(3, 4), q(1, 1)));
    }

    #[test]
    fn rounding_brackets_the_set() {
        let s = IntervalSet::from_interval(Interval::closed_open(q(1, 3), q(2, 3)));
        let outer = s.round_dyadic(3, true);
        let inner = s.round_dyadic(3, false);
        assert_eq!(outer.parts(), &[Interval::open(q(2, 8), q(6, 8))]);
        assert_eq!(inner.parts(), &[Interval::closed(q(3, 8), q(5, 8))]);
    }
}
