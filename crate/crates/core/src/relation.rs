//! Closed relations in `[0,1]^(N+1)` and their membership, box-feasibility and image oracles.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::Error;
use crate::interval::{Extremum, GridBox, Interval, IntervalSet};
use crate::poly::{eval_univariate, Enclosure, Poly};
use crate::scalar::{sign, Scalar};

/// Highest total degree accepted for region constraints.
pub const MAX_DEGREE: u32 = 4;

/// Default bisection depth for region feasibility.
pub const DEFAULT_FEASIBILITY_DEPTH: u32 = 10;

/// Default number of halvings of a target cell when bracketing a region image.
pub const DEFAULT_IMAGE_DEPTH: u32 = 5;

/// Three-valued answer of a feasibility query. `Yes` and `No` are certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Yes,
    No,
    Maybe,
}

/// A finite set of points, kept sorted and free of duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    points: Vec<Vec<Scalar>>,
}

impl PointSet {
    pub fn points(&self) -> &[Vec<Scalar>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.points
            .binary_search_by(|p| p.as_slice().cmp(x))
            .is_ok()
    }

    pub fn index_of(&self, x: &[Scalar]) -> Option<usize> {
        self.points.binary_search_by(|p| p.as_slice().cmp(x)).ok()
    }
}

/// A straight segment in the unit square between two distinct endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub start: [Scalar; 2],
    pub end: [Scalar; 2],
}

impl Segment {
    pub fn new(start: [Scalar; 2], end: [Scalar; 2]) -> Result<Segment, Error> {
        if start == end {
            return Err(Error::InvalidInput("degenerate segment; use a point set"));
        }
        for c in start.iter().chain(end.iter()) {
            check_unit(c)?;
        }
        Ok(Segment { start, end })
    }

    fn delta(&self) -> [Scalar; 2] {
        [&self.end[0] - &self.start[0], &self.end[1] - &self.start[1]]
    }

    fn contains(&self, x: &[Scalar]) -> bool {
        let d = self.delta();
        let rx = &x[0] - &self.start[0];
        let ry = &x[1] - &self.start[1];
        if &rx * &d[1] != &ry * &d[0] {
            return false;
        }
        let dot = &rx * &d[0] + &ry * &d[1];
        let len2 = &d[0] * &d[0] + &d[1] * &d[1];
        !dot.is_negative() && dot <= len2
    }

    /// Parameters `t in [0,1]` whose point has coordinate `axis` inside `side`.
    fn params_in(&self, axis: usize, side: &IntervalSet) -> IntervalSet {
        let d = self.delta();
        let unit = IntervalSet::from_interval(Interval::unit());
        if d[axis].is_zero() {
            if side.contains(&self.start[axis]) {
                unit
            } else {
                IntervalSet::empty()
            }
        } else {
            let slope = d[axis].recip();
            let offset = -(&self.start[axis] * &slope);
            side.affine(&slope, &offset).intersect(&unit)
        }
    }

    fn swapped(&self) -> Segment {
        Segment {
            start: [self.start[1].clone(), self.start[0].clone()],
            end: [self.end[1].clone(), self.end[0].clone()],
        }
    }
}

/// A finite union of segments; arity 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SegmentSet {
    segments: Vec<Segment>,
}

impl SegmentSet {
    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }
}

/// The points of `[0,1]^(N+1)` where every constraint polynomial is `<= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ImplicitRegion {
    constraints: Vec<Poly>,
}

impl ImplicitRegion {
    pub fn constraints(&self) -> &[Poly] {
        &self.constraints
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Body {
    Points(PointSet),
    Segments(SegmentSet),
    Region(ImplicitRegion),
    Union(Vec<Relation>),
}

/// A closed relation of arity `N+1 >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    arity: usize,
    body: Body,
}

/// Inner and outer enclosures of an image set. Equal when the image is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub inner: IntervalSet,
    pub outer: IntervalSet,
}

impl Bracket {
    pub fn exact(set: IntervalSet) -> Bracket {
        Bracket {
            inner: set.clone(),
            outer: set,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.inner == self.outer
    }

    fn join(&mut self, other: Bracket) {
        self.inner = self.inner.union(&other.inner);
        self.outer = self.outer.union(&other.outer);
    }
}

fn check_unit(c: &Scalar) -> Result<(), Error> {
    if c.is_negative() || *c > Scalar::one() {
        Err(Error::InvalidInput("coordinate outside [0,1]"))
    } else {
        Ok(())
    }
}

fn check_arity(arity: usize) -> Result<(), Error> {
    if arity < 2 {
        Err(Error::InvalidInput("arity must be at least 2"))
    } else {
        Ok(())
    }
}

impl Relation {
    pub fn empty(arity: usize) -> Relation {
        Relation {
            arity,
            body: Body::Points(PointSet { points: Vec::new() }),
        }
    }

    pub fn points(arity: usize, points: Vec<Vec<Scalar>>) -> Result<Relation, Error> {
        check_arity(arity)?;
        let mut points = points;
        for p in &points {
            if p.len() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: p.len(),
                });
            }
            for c in p {
                check_unit(c)?;
            }
        }
        points.sort();
        points.dedup();
        Ok(Relation {
            arity,
            body: Body::Points(PointSet { points }),
        })
    }

    pub fn segments(segments: Vec<Segment>) -> Result<Relation, Error> {
        if segments.is_empty() {
            return Err(Error::InvalidInput("segment set needs at least one segment"));
        }
        Ok(Relation {
            arity: 2,
            body: Body::Segments(SegmentSet { segments }),
        })
    }

    pub fn region(arity: usize, constraints: Vec<Poly>) -> Result<Relation, Error> {
        check_arity(arity)?;
        if constraints.is_empty() {
            return Err(Error::InvalidInput("region needs at least one constraint"));
        }
        for p in &constraints {
            if p.nvars() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: p.nvars(),
                });
            }
            if p.is_zero() {
                return Err(Error::InvalidInput("zero constraint polynomial"));
            }
            if p.degree() > MAX_DEGREE {
                return Err(Error::InvalidInput("constraint degree exceeds 4"));
            }
        }
        Ok(Relation {
            arity,
            body: Body::Region(ImplicitRegion { constraints }),
        })
    }

    /// Flat union of relations of equal arity. A single relation is returned unchanged.
    pub fn union(relations: Vec<Relation>) -> Result<Relation, Error> {
        let first = relations
            .first()
            .ok_or(Error::InvalidInput("union of no relations"))?;
        let arity = first.arity;
        let mut members = Vec::new();
        for r in relations {
            if r.arity != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: r.arity,
                });
            }
            match r.body {
                Body::Union(inner) => members.extend(inner),
                _ => members.push(r),
            }
        }
        if members.len() == 1 {
            return Ok(members.pop().unwrap());
        }
        Ok(Relation {
            arity,
            body: Body::Union(members),
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn as_points(&self) -> Option<&PointSet> {
        match &self.body {
            Body::Points(p) => Some(p),
            _ => None,
        }
    }

    /// True for the empty point set.
    pub fn is_empty_relation(&self) -> bool {
        matches!(&self.body, Body::Points(p) if p.is_empty())
    }

    /// True when every oracle answers exactly (no region anywhere in the relation).
    pub fn is_exact_kind(&self) -> bool {
        match &self.body {
            Body::Points(_) | Body::Segments(_) => true,
            Body::Region(_) => false,
            Body::Union(ms) => ms.iter().all(Relation::is_exact_kind),
        }
    }

    fn check_tuple(&self, len: usize) -> Result<(), Error> {
        if len != self.arity {
            Err(Error::ArityMismatch {
                expected: self.arity,
                found: len,
            })
        } else {
            Ok(())
        }
    }

    pub fn member(&self, x: &[Scalar]) -> Result<bool, Error> {
        self.check_tuple(x.len())?;
        Ok(self.member_unchecked(x))
    }

    fn member_unchecked(&self, x: &[Scalar]) -> bool {
        if x.iter().any(|c| c.is_negative() || *c > Scalar::one()) {
            return false;
        }
        match &self.body {
            Body::Points(p) => p.contains(x),
            Body::Segments(s) => s.segments.iter().any(|seg| seg.contains(x)),
            Body::Region(r) => r.constraints.iter().all(|p| !p.eval(x).is_positive()),
            Body::Union(ms) => ms.iter().any(|m| m.member_unchecked(x)),
        }
    }

    /// Decides whether the relation meets `b`. `budget` caps region bisection depth.
    pub fn box_feasible(&self, b: &GridBox, budget: u32) -> Result<Feasibility, Error> {
        self.check_tuple(b.arity())?;
        let unit = Interval::unit();
        let clipped: Vec<Interval> = b.sides().iter().map(|s| s.intersect(&unit)).collect();
        if clipped.iter().any(Interval::is_empty) {
            return Ok(Feasibility::No);
        }
        let clipped = GridBox::new(clipped)?;
        Ok(self.feasible_clipped(&clipped, budget))
    }

    fn feasible_clipped(&self, b: &GridBox, budget: u32) -> Feasibility {
        match &self.body {
            Body::Points(p) => bool_verdict(p.points.iter().any(|x| b.contains(x))),
            Body::Segments(s) => bool_verdict(s.segments.iter().any(|seg| segment_meets(seg, b))),
            Body::Region(r) => region_feasible(&r.constraints, b, budget),
            Body::Union(ms) => {
                let mut maybe = false;
                for m in ms {
                    match m.feasible_clipped(b, budget) {
                        Feasibility::Yes => return Feasibility::Yes,
                        Feasibility::Maybe => maybe = true,
                        Feasibility::No => {}
                    }
                }
                if maybe {
                    Feasibility::Maybe
                } else {
                    Feasibility::No
                }
            }
        }
    }

    /// `{ y in target : exists x in s with (x, y) in G }` for binary relations.
    pub fn image(&self, s: &IntervalSet, target: &Interval) -> Result<Bracket, Error> {
        if self.arity != 2 {
            return Err(Error::NotBinary(self.arity));
        }
        Ok(self.block_image(s, &[], target, DEFAULT_IMAGE_DEPTH))
    }

    /// Generalized image across one block: the last coordinates `y in target` of points
    /// whose first coordinate lies in `s` and whose middle coordinates lie in `middle`.
    pub fn block_image(
        &self,
        s: &IntervalSet,
        middle: &[Interval],
        target: &Interval,
        depth: u32,
    ) -> Bracket {
        debug_assert_eq!(middle.len() + 2, self.arity);
        if s.is_empty() || target.is_empty() {
            return Bracket::exact(IntervalSet::empty());
        }
        match &self.body {
            Body::Points(p) => {
                let ys = p
                    .points
                    .iter()
                    .filter(|x| {
                        s.contains(&x[0])
                            && middle.iter().zip(&x[1..]).all(|(c, v)| c.contains(v))
                            && target.contains(&x[self.arity - 1])
                    })
                    .map(|x| x[self.arity - 1].clone());
                Bracket::exact(IntervalSet::from_points(ys))
            }
            Body::Segments(set) => {
                let mut parts = Vec::new();
                for seg in &set.segments {
                    let t = seg.params_in(0, s);
                    let d = seg.delta();
                    parts.extend(t.affine(&d[1], &seg.start[1]).into_parts());
                }
                Bracket::exact(IntervalSet::normalize(parts).intersect_interval(target))
            }
            Body::Region(r) => {
                if middle.is_empty() {
                    if let Some(exact) = region_image_exact(&r.constraints, s, target) {
                        return Bracket::exact(exact);
                    }
                }
                region_image_bracket(self, &r.constraints, s, middle, target, depth)
            }
            Body::Union(ms) => {
                let mut acc = Bracket::exact(IntervalSet::empty());
                for m in ms {
                    acc.join(m.block_image(s, middle, target, depth));
                }
                acc
            }
        }
    }

    /// [`Relation::block_image`] for several targets at once. Exact images are computed
    /// once and clipped to each target.
    pub fn block_images(
        &self,
        s: &IntervalSet,
        middle: &[Interval],
        targets: &[Interval],
        depth: u32,
    ) -> Vec<Bracket> {
        let clip_all = |full: &IntervalSet| {
            targets
                .iter()
                .map(|t| Bracket::exact(full.intersect_interval(t)))
                .collect()
        };
        match &self.body {
            Body::Points(_) | Body::Segments(_) => {
                let full = self.block_image(s, middle, &Interval::unit(), depth).outer;
                clip_all(&full)
            }
            Body::Region(r) => {
                if middle.is_empty() && !s.is_empty() {
                    if let Some(full) = region_image_exact(&r.constraints, s, &Interval::unit()) {
                        return clip_all(&full);
                    }
                }
                targets
                    .iter()
                    .map(|t| self.block_image(s, middle, t, depth))
                    .collect()
            }
            Body::Union(ms) => {
                let mut acc: Vec<Bracket> = targets
                    .iter()
                    .map(|_| Bracket::exact(IntervalSet::empty()))
                    .collect();
                for m in ms {
                    for (a, b) in acc.iter_mut().zip(m.block_images(s, middle, targets, depth)) {
                        a.join(b);
                    }
                }
                acc
            }
        }
    }

    /// False only when no point of the relation starts in `s` and continues through `middle`.
    pub fn prefix_feasible(&self, s: &IntervalSet, middle: &[Interval], budget: u32) -> bool {
        if s.is_empty() {
            return false;
        }
        match &self.body {
            Body::Points(p) => p.points.iter().any(|x| {
                s.contains(&x[0]) && middle.iter().zip(&x[1..]).all(|(c, v)| c.contains(v))
            }),
            Body::Union(ms) => ms.iter().any(|m| m.prefix_feasible(s, middle, budget)),
            _ => {
                let free = self.arity - 1 - middle.len();
                s.parts().iter().any(|part| {
                    let mut sides = vec![part.clone()];
                    sides.extend(middle.iter().cloned());
                    sides.extend(core::iter::repeat(Interval::unit()).take(free));
                    let b = GridBox::new(sides).expect("nonempty sides");
                    self.feasible_clipped(&b, budget) != Feasibility::No
                })
            }
        }
    }

    /// Coordinate reversal.
    pub fn invert(&self) -> Relation {
        let body = match &self.body {
            Body::Points(p) => {
                let mut points: Vec<Vec<Scalar>> = p
                    .points
                    .iter()
                    .map(|x| x.iter().rev().cloned().collect())
                    .collect();
                points.sort();
                Body::Points(PointSet { points })
            }
            Body::Segments(s) => Body::Segments(SegmentSet {
                segments: s.segments.iter().map(Segment::swapped).collect(),
            }),
            Body::Region(r) => Body::Region(ImplicitRegion {
                constraints: r.constraints.iter().map(Poly::reverse_vars).collect(),
            }),
            Body::Union(ms) => Body::Union(ms.iter().map(Relation::invert).collect()),
        };
        Relation {
            arity: self.arity,
            body,
        }
    }
}

fn bool_verdict(b: bool) -> Feasibility {
    if b {
        Feasibility::Yes
    } else {
        Feasibility::No
    }
}

fn segment_meets(seg: &Segment, b: &GridBox) -> bool {
    let mut t = IntervalSet::from_interval(Interval::unit());
    for axis in 0..2 {
        t = t.intersect(&seg.params_in(axis, &IntervalSet::from_interval(b.sides()[axis].clone())));
        if t.is_empty() {
            return false;
        }
    }
    true
}

fn closure_ranges(b: &GridBox) -> Vec<Enclosure> {
    b.sides()
        .iter()
        .map(|s| Enclosure {
            lo: s.lo().clone(),
            hi: s.hi().clone(),
        })
        .collect()
}

/// Minimum of `p` over the box, if the partial-derivative signs pin it to a corner.
/// Returns the corner value and whether the minimum is strictly avoided by the box
/// (an open endpoint in a direction of nonzero slope).
fn corner_minimum(p: &Poly, b: &GridBox, ranges: &[Enclosure]) -> Option<(Scalar, bool)> {
    let mut corner = Vec::with_capacity(b.arity());
    let mut strict = false;
    for (i, side) in b.sides().iter().enumerate() {
        if side.is_point() {
            corner.push(side.lo().clone());
            continue;
        }
        let d = p.partial(i).eval_range(ranges);
        if !d.lo.is_negative() {
            corner.push(side.lo().clone());
            if !side.lo_closed() && d.lo.is_positive() {
                strict = true;
            }
        } else if !d.hi.is_positive() {
            corner.push(side.hi().clone());
            if !side.hi_closed() && d.hi.is_negative() {
                strict = true;
            }
        } else {
            return None;
        }
    }
    Some((p.eval(&corner), strict))
}

fn witness_points(b: &GridBox) -> Vec<Vec<Scalar>> {
    let sides = b.sides();
    let mut out = vec![sides.iter().map(|s| s.sample().expect("nonempty")).collect::<Vec<_>>()];
    if sides.len() <= 6 {
        for mask in 0u32..(1 << sides.len()) {
            let mut pt = Vec::with_capacity(sides.len());
            let mut ok = true;
            for (i, s) in sides.iter().enumerate() {
                let hi = mask & (1 << i) != 0;
                let (v, closed) = if hi {
                    (s.hi(), s.hi_closed())
                } else {
                    (s.lo(), s.lo_closed())
                };
                if !closed {
                    ok = false;
                    break;
                }
                pt.push(v.clone());
            }
            if ok {
                out.push(pt);
            }
        }
    }
    out
}

fn region_feasible(constraints: &[Poly], b: &GridBox, budget: u32) -> Feasibility {
    let ranges = closure_ranges(b);
    let mut all_hold = true;
    for p in constraints {
        let r = p.eval_range(&ranges);
        if r.lo.is_positive() {
            return Feasibility::No;
        }
        if r.hi.is_positive() {
            all_hold = false;
            if let Some((v, strict)) = corner_minimum(p, b, &ranges) {
                if v.is_positive() || (v.is_zero() && strict) {
                    return Feasibility::No;
                }
            }
        }
    }
    if all_hold {
        return Feasibility::Yes;
    }
    for w in witness_points(b) {
        if constraints.iter().all(|p| !p.eval(&w).is_positive()) {
            return Feasibility::Yes;
        }
    }
    if budget == 0 {
        return Feasibility::Maybe;
    }
    let i = b.widest_side();
    let (l, r) = b.sides()[i].bisect();
    let mut maybe = false;
    for half in [l, r] {
        if half.is_empty() {
            continue;
        }
        match region_feasible(constraints, &b.with_side(i, half), budget - 1) {
            Feasibility::Yes => return Feasibility::Yes,
            Feasibility::Maybe => maybe = true,
            Feasibility::No => {}
        }
    }
    if maybe {
        Feasibility::Maybe
    } else {
        Feasibility::No
    }
}

/// Supremum (or infimum) of a univariate polynomial of degree at most 2 over a set.
fn extremum_over(coeffs: &[Scalar], set: &IntervalSet, want_max: bool) -> Option<Extremum> {
    let better = |a: &Scalar, b: &Scalar| if want_max { a > b } else { a < b };
    let constant = coeffs.iter().skip(1).all(Scalar::is_zero);
    let mut best: Option<Extremum> = None;
    let mut consider = |value: Scalar, attained: bool| match &mut best {
        None => best = Some(Extremum { value, attained }),
        Some(b) => {
            if better(&value, &b.value) {
                *b = Extremum { value, attained };
            } else if value == b.value {
                b.attained |= attained;
            }
        }
    };
    for part in set.parts() {
        let interior = !part.is_point();
        consider(
            eval_univariate(coeffs, part.lo()),
            part.lo_closed() || (constant && interior),
        );
        consider(
            eval_univariate(coeffs, part.hi()),
            part.hi_closed() || (constant && interior),
        );
        if coeffs.len() == 3 && !coeffs[2].is_zero() {
            let v = -(&coeffs[1] / &(&coeffs[2] * &Scalar::from_int(2)));
            if v > *part.lo() && v < *part.hi() {
                consider(eval_univariate(coeffs, &v), true);
            }
        }
    }
    best
}

/// Exact image for binary regions whose constraints bound `x1` by at most one
/// non-constant function of `x0` of degree at most 2.
fn region_image_exact(constraints: &[Poly], s: &IntervalSet, target: &Interval) -> Option<IntervalSet> {
    let zero = Scalar::zero();
    let one = Scalar::one();
    let mut domain = Interval::unit();
    let mut y_lo = zero.clone();
    let mut y_hi = one.clone();
    let mut moving: Option<(bool, Vec<Scalar>)> = None;
    for p in constraints {
        let (a, g) = p.split_linear(1)?;
        let gc = g.univariate(0)?;
        if a.is_zero() {
            if gc.len() > 2 {
                return None;
            }
            let c0 = &gc[0];
            let c1 = gc.get(1).cloned().unwrap_or_else(Scalar::zero);
            match sign(&c1) {
                Ordering::Equal => {
                    if c0.is_positive() {
                        return Some(IntervalSet::empty());
                    }
                }
                ord => {
                    let v = -(c0 / &c1);
                    let half = if ord == Ordering::Greater {
                        Interval::closed(zero.clone().min(v.clone()), v)
                    } else {
                        Interval::closed(v.clone(), one.clone().max(v))
                    };
                    domain = domain.intersect(&half);
                }
            }
            continue;
        }
        let bound: Vec<Scalar> = gc.iter().map(|c| -(c / &a)).collect();
        let upper = a.is_positive();
        if bound.iter().skip(1).all(Scalar::is_zero) {
            if upper {
                y_hi = y_hi.min(bound[0].clone());
            } else {
                y_lo = y_lo.max(bound[0].clone());
            }
        } else {
            if moving.is_some() || bound.len() > 3 {
                return None;
            }
            moving = Some((upper, bound));
        }
    }
    let xs = s.intersect_interval(&domain);
    if xs.is_empty() {
        return Some(IntervalSet::empty());
    }
    let range = match moving {
        None => Interval::closed(y_lo, y_hi),
        Some((true, u)) => {
            let sup = extremum_over(&u, &xs, true)?;
            let (hi, closed) = match sup.value.cmp(&y_hi) {
                Ordering::Less => (sup.value, sup.attained),
                Ordering::Equal => (y_hi, sup.attained),
                Ordering::Greater => (y_hi, true),
            };
            Interval::new(y_lo, hi, true, closed)
        }
        Some((false, l)) => {
            let inf = extremum_over(&l, &xs, false)?;
            let (lo, closed) = match inf.value.cmp(&y_lo) {
                Ordering::Greater => (inf.value, inf.attained),
                Ordering::Equal => (y_lo, inf.attained),
                Ordering::Less => (y_lo, true),
            };
            Interval::new(lo, y_hi, closed, true)
        }
    };
    Some(IntervalSet::from_interval(range).intersect_interval(target))
}

/// Splits `target` into `2^depth` consecutive pieces that partition it.
pub(crate) fn split_pieces(target: &Interval, depth: u32) -> Vec<Interval> {
    if target.is_point() {
        return vec![target.clone()];
    }
    let k = 1i64 << depth;
    let width = target.width();
    let step = &width / &Scalar::from_int(k);
    let mut out = Vec::with_capacity(k as usize);
    for j in 0..k {
        let lo = target.lo() + &(&step * &Scalar::from_int(j));
        let hi = if j + 1 == k {
            target.hi().clone()
        } else {
            target.lo() + &(&step * &Scalar::from_int(j + 1))
        };
        let lo_closed = if j == 0 { target.lo_closed() } else { true };
        let hi_closed = if j + 1 == k { target.hi_closed() } else { false };
        let piece = Interval::new(lo, hi, lo_closed, hi_closed);
        if !piece.is_empty() {
            out.push(piece);
        }
    }
    out
}

fn sample_starts(s: &IntervalSet) -> Vec<Scalar> {
    let mut out = Vec::new();
    for p in s.parts() {
        if p.lo_closed() {
            out.push(p.lo().clone());
        }
        out.push(p.sample().expect("nonempty part"));
        if p.hi_closed() && !p.is_point() {
            out.push(p.hi().clone());
        }
    }
    out
}

fn region_image_bracket(
    rel: &Relation,
    constraints: &[Poly],
    s: &IntervalSet,
    middle: &[Interval],
    target: &Interval,
    depth: u32,
) -> Bracket {
    let unit = Interval::unit();
    let target = target.intersect(&unit);
    if target.is_empty() {
        return Bracket::exact(IntervalSet::empty());
    }
    let mids: Vec<Scalar> = middle.iter().map(|c| c.sample().expect("nonempty cell")).collect();
    let starts = sample_starts(s);
    let mut inner = Vec::new();
    let mut outer = Vec::new();
    for piece in split_pieces(&target, depth) {
        let reachable = s.parts().iter().any(|part| {
            let mut sides = vec![part.clone()];
            sides.extend(middle.iter().cloned());
            sides.push(piece.clone());
            let b = GridBox::new(sides).expect("nonempty sides");
            rel.box_feasible(&b, DEFAULT_FEASIBILITY_DEPTH)
                .map(|v| v != Feasibility::No)
                .unwrap_or(true)
        });
        if !reachable {
            continue;
        }
        outer.push(piece.clone());
        let mut certified = false;
        let mid_y = piece.sample().expect("nonempty piece");
        let mut witness = false;
        for x0 in &starts {
            let mut ranges = vec![Enclosure::point(x0.clone())];
            ranges.extend(mids.iter().cloned().map(Enclosure::point));
            ranges.push(Enclosure {
                lo: piece.lo().clone(),
                hi: piece.hi().clone(),
            });
            if constraints.iter().all(|p| !p.eval_range(&ranges).hi.is_positive()) {
                certified = true;
                break;
            }
            let mut pt = vec![x0.clone()];
            pt.extend(mids.iter().cloned());
            pt.push(mid_y.clone());
            if rel.member_unchecked(&pt) {
                witness = true;
            }
        }
        if certified {
            inner.push(piece);
        } else if witness {
            inner.push(Interval::point(mid_y));
        }
    }
    Bracket {
        inner: IntervalSet::normalize(inner),
        outer: IntervalSet::normalize(outer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn triangle() -> Relation {
        // x1 - x0 <= 0
        let p = Poly::var(2, 1).sub(&Poly::var(2, 0));
        Relation::region(2, vec![p]).unwrap()
    }

    fn parabola() -> Relation {
        let p = Poly::var(2, 1).sub(&Poly::var(2, 0).pow(2));
        Relation::region(2, vec![p]).unwrap()
    }

    fn maribor() -> Relation {
        Relation::segments(vec![
            Segment::new([q(0, 1), q(0, 1)], [q(1, 1), q(0, 1)]).unwrap(),
            Segment::new([q(0, 1), q(1, 1)], [q(1, 1), q(0, 1)]).unwrap(),
        ])
        .unwrap()
    }

    fn bx(sides: &[Interval]) -> GridBox {
        GridBox::new(sides.to_vec()).unwrap()
    }

    #[test]
    fn membership() {
        assert!(triangle().member(&[q(3, 4), q(1, 4)]).unwrap());
        assert!(!triangle().member(&[q(1, 4), q(3, 4)]).unwrap());
        assert!(maribor().member(&[q(1, 3), q(2, 3)]).unwrap());
        assert!(!maribor().member(&[q(1, 3), q(1, 3)]).unwrap());
        assert!(triangle().member(&[q(1, 2)]).is_err());
    }

    #[test]
    fn feasibility_examples() {
        let rect = Relation::region(
            2,
            vec![
                Poly::constant(2, q(2, 3)).sub(&Poly::var(2, 0)),
                Poly::var(2, 1).sub(&Poly::constant(2, q(1, 3))),
            ],
        )
        .unwrap();
        let half = Interval::closed(q(0, 1), q(1, 2));
        assert_eq!(
            rect.box_feasible(&bx(&[half.clone(), half]), 8).unwrap(),
            Feasibility::No
        );
        let b = bx(&[
            Interval::closed_open(q(0, 1), q(1, 2)),
            Interval::closed(q(1, 2), q(1, 1)),
        ]);
        assert_eq!(triangle().box_feasible(&b, 8).unwrap(), Feasibility::No);
        let b = bx(&[Interval::closed(q(1, 2), q(1, 1)), Interval::closed(q(0, 1), q(1, 4))]);
        assert_eq!(parabola().box_feasible(&b, 8).unwrap(), Feasibility::Yes);
    }

    #[test]
    fn image_examples() {
        let diag = Relation::segments(vec![Segment::new([q(0, 1), q(0, 1)], [q(1, 1), q(1, 1)]).unwrap()]).unwrap();
        let s = IntervalSet::from_interval(Interval::closed(q(1, 4), q(1, 2)));
        let img = diag.image(&s, &Interval::unit()).unwrap();
        assert!(img.is_exact());
        assert_eq!(img.outer, s);

        let s = IntervalSet::from_interval(Interval::closed(q(0, 1), q(1, 2)));
        let img = maribor().image(&s, &Interval::unit()).unwrap();
        let expect = IntervalSet::normalize(vec![
            Interval::point(q(0, 1)),
            Interval::closed(q(1, 2), q(1, 1)),
        ]);
        assert_eq!(img.outer, expect);

        let corners = Relation::points(
            2,
            vec![
                vec![q(0, 1), q(0, 1)],
                vec![q(0, 1), q(1, 1)],
                vec![q(1, 1), q(0, 1)],
                vec![q(1, 1), q(1, 1)],
            ],
        )
        .unwrap();
        let s = IntervalSet::from_interval(Interval::closed(q(0, 1), q(1, 4)));
        let img = corners.image(&s, &Interval::closed(q(1, 2), q(1, 1))).unwrap();
        assert_eq!(img.outer, IntervalSet::from_points([q(1, 1)]));
    }

    #[test]
    fn region_images_are_exact_with_open_ends() {
        let s = IntervalSet::from_interval(Interval::closed_open(q(1, 4), q(1, 2)));
        let img = triangle().image(&s, &Interval::unit()).unwrap();
        assert!(img.is_exact());
        assert_eq!(img.outer.parts(), &[Interval::closed_open(q(0, 1), q(1, 2))]);
        let img = parabola().image(&s, &Interval::unit()).unwrap();
        assert_eq!(img.outer.parts(), &[Interval::closed_open(q(0, 1), q(1, 4))]);
        let inv = triangle().invert().image(&s, &Interval::unit()).unwrap();
        assert_eq!(inv.outer.parts(), &[Interval::closed(q(1, 4), q(1, 1))]);
    }

    #[test]
    fn disc_image_is_bracketed() {
        let x = Poly::var(2, 0).sub(&Poly::constant(2, q(1, 2)));
        let y = Poly::var(2, 1).sub(&Poly::constant(2, q(1, 2)));
        let disc = x.pow(2).add(&y.pow(2)).sub(&Poly::constant(2, q(1, 16)));
        let g = Relation::region(2, vec![disc]).unwrap();
        let s = IntervalSet::from_interval(Interval::closed(q(1, 2), q(1, 2)));
        let img = g.image(&s, &Interval::unit()).unwrap();
        let truth = Interval::closed(q(1, 4), q(3, 4));
        for p in img.inner.parts() {
            assert!(p.intersect(&truth) == *p);
        }
        let hull = img.outer.hull();
        assert!(hull.lo() <= &q(1, 4) && hull.hi() >= &q(3, 4));
        assert!(!img.inner.is_empty());
    }

    #[test]
    fn inversion_and_union() {
        let p = Relation::points(3, vec![vec![q(0, 1), q(1, 2), q(1, 1)]]).unwrap();
        let inv = p.invert();
        assert_eq!(inv.as_points().unwrap().points(), &[vec![q(1, 1), q(1, 2), q(0, 1)]]);
        assert_eq!(inv.invert(), p);
        let t = triangle().invert();
        match t.body() {
            Body::Region(r) => assert_eq!(r.constraints()[0], Poly::var(2, 0).sub(&Poly::var(2, 1))),
            _ => panic!(),
        }
        assert_eq!(Relation::union(vec![triangle()]).unwrap(), triangle());
        assert!(Relation::union(vec![triangle(), p]).is_err());
        assert!(Relation::union(vec![]).is_err());
    }
}
