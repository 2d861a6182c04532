//! Standard relations on `[0,1]^2` used as test subjects and benchmarks.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::poly::Poly;
use crate::relation::{Relation, Segment};
use crate::scalar::{q, Scalar};

fn pts(list: Vec<(Scalar, Scalar)>) -> Relation {
    Relation::points(2, list.into_iter().map(|(a, b)| vec![a, b]).collect()).expect("valid points")
}

fn seg(a: (Scalar, Scalar), b: (Scalar, Scalar)) -> Segment {
    Segment::new([a.0, a.1], [b.0, b.1]).expect("valid segment")
}

fn segs(list: Vec<Segment>) -> Relation {
    Relation::segments(list).expect("valid segments")
}

fn x(i: usize) -> Poly {
    Poly::var(2, i)
}

fn c(v: Scalar) -> Poly {
    Poly::constant(2, v)
}

fn region(constraints: Vec<Poly>) -> Relation {
    Relation::region(2, constraints).expect("valid region")
}

fn union(members: Vec<Relation>) -> Relation {
    Relation::union(members).expect("same arity")
}

pub fn four_corners() -> Relation {
    g_n(2).expect("n = 2")
}

/// The `n x n` lattice `{(k/(n-1), l/(n-1))}`.
pub fn g_n(n: usize) -> Result<Relation, Error> {
    if n < 2 {
        return Err(Error::InvalidInput("lattice needs n >= 2"));
    }
    let d = (n - 1) as i64;
    let mut out = Vec::with_capacity(n * n);
    for k in 0..n as i64 {
        for l in 0..n as i64 {
            out.push((q(k, d), q(l, d)));
        }
    }
    Ok(pts(out))
}

/// `{x1 <= x0}`
pub fn triangle() -> Relation {
    region(vec![x(1).sub(&x(0))])
}

/// The whole square.
pub fn square() -> Relation {
    region(vec![x(0).sub(&c(Scalar::one()))])
}

/// `[2/3, 1] x [0, 1/3]`, whose chains cannot continue.
pub fn empty_rect() -> Relation {
    region(vec![c(q(2, 3)).sub(&x(0)), x(1).sub(&c(q(1, 3)))])
}

pub fn maribor_segments() -> Relation {
    segs(vec![
        seg((q(0, 1), q(0, 1)), (q(1, 1), q(0, 1))),
        seg((q(0, 1), q(1, 1)), (q(1, 1), q(0, 1))),
    ])
}

pub fn maribor_core() -> Relation {
    pts(vec![(q(0, 1), q(0, 1)), (q(1, 1), q(0, 1)), (q(0, 1), q(1, 1))])
}

/// How the spacing of the two arms of `g_a` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaReading {
    /// Spacing `1/a`: `a + 1` points on the bottom edge, `a` on the left edge.
    Figure,
    /// Spacing `1/(a-1)`: `a` points on the bottom edge, `a - 1` on the left edge.
    Paper,
}

impl GaReading {
    pub fn name(self) -> &'static str {
        match self {
            GaReading::Figure => "figure",
            GaReading::Paper => "paper",
        }
    }

    /// Coefficient `c` in `N_m = N_{m-1} + c N_{m-2}`.
    pub fn recurrence(self, a: usize) -> usize {
        match self {
            GaReading::Figure => a,
            GaReading::Paper => a - 1,
        }
    }
}

/// Points `(k/d, 0)` for `k = 0..=d` and `(0, k/d)` for `k = 1..=d`.
pub fn g_a(a: usize, reading: GaReading) -> Result<Relation, Error> {
    let d = match reading {
        GaReading::Figure if a >= 1 => a as i64,
        GaReading::Paper if a >= 2 => a as i64 - 1,
        _ => return Err(Error::InvalidInput("g_a parameter too small")),
    };
    let mut out = Vec::new();
    for k in 0..=d {
        out.push((q(k, d), q(0, 1)));
    }
    for k in 1..=d {
        out.push((q(0, 1), q(k, d)));
    }
    Ok(pts(out))
}

/// `{0} x I  ∪  I x {1}`
pub fn ingram_2_2() -> Relation {
    segs(vec![
        seg((q(0, 1), q(0, 1)), (q(0, 1), q(1, 1))),
        seg((q(0, 1), q(1, 1)), (q(1, 1), q(1, 1))),
    ])
}

/// `{0} x I  ∪  I x {0}`
pub fn ingram_2_3() -> Relation {
    segs(vec![
        seg((q(0, 1), q(0, 1)), (q(0, 1), q(1, 1))),
        seg((q(0, 1), q(0, 1)), (q(1, 1), q(0, 1))),
    ])
}

/// The diagonal together with `{1} x I`.
pub fn ingram_2_14() -> Relation {
    segs(vec![
        seg((q(0, 1), q(0, 1)), (q(1, 1), q(1, 1))),
        seg((q(1, 1), q(0, 1)), (q(1, 1), q(1, 1))),
    ])
}

/// `I x {0}  ∪  {1} x I`
pub fn bl() -> Relation {
    segs(vec![
        seg((q(0, 1), q(0, 1)), (q(1, 1), q(0, 1))),
        seg((q(1, 1), q(0, 1)), (q(1, 1), q(1, 1))),
    ])
}

/// `{x1 <= x0^2}`
pub fn parabola() -> Relation {
    region(vec![x(1).sub(&x(0).pow(2))])
}

pub fn diagonal() -> Relation {
    segs(vec![seg((q(0, 1), q(0, 1)), (q(1, 1), q(1, 1)))])
}

/// The diagonal with `(1/4, 3/5)` and `(3/5, 1/4)` added.
pub fn diagonal_plus_two_points() -> Relation {
    union(vec![
        diagonal(),
        pts(vec![(q(1, 4), q(3, 5)), (q(3, 5), q(1, 4))]),
    ])
}

/// `{(i/n, 0)} ∪ {(1, i/n)} ∪ {(0, 1)}` for `i = 0..=n`.
pub fn l_n(n: usize) -> Result<Relation, Error> {
    l_n_pq(n, Scalar::zero(), Scalar::one())
}

/// The same shape placed between `p < q`: `{(p + iΔ, p)} ∪ {(q, p + iΔ)} ∪ {(p, q)}`
/// with `Δ = (q - p)/n`.
pub fn l_n_pq(n: usize, p: Scalar, qv: Scalar) -> Result<Relation, Error> {
    if n < 1 {
        return Err(Error::InvalidInput("l_n needs n >= 1"));
    }
    if p >= qv || p.is_negative() || qv > Scalar::one() {
        return Err(Error::InvalidInput("l_n needs 0 <= p < q <= 1"));
    }
    let step = (qv.clone() - p.clone()) * q(1, n as i64);
    let mut out = Vec::new();
    for i in 0..=n {
        let t = p.clone() + step.clone() * Scalar::from_int(i as i64);
        out.push((t.clone(), p.clone()));
        out.push((qv.clone(), t));
    }
    out.push((p, qv));
    Ok(pts(out))
}

/// The triangle with the single point `(p, q)` above the diagonal added.
pub fn triangle_plus_point(p: Scalar, qv: Scalar) -> Result<Relation, Error> {
    if p >= qv || p.is_negative() || qv > Scalar::one() {
        return Err(Error::InvalidInput("point must lie above the diagonal"));
    }
    Ok(union(vec![triangle(), pts(vec![(p, qv)])]))
}

/// Horizontal lines at heights `(2i - 1)/(2k)`, `i = 1..=k`.
pub fn k_horizontal_lines(k: usize) -> Result<Relation, Error> {
    if k < 1 {
        return Err(Error::InvalidInput("need at least one line"));
    }
    let d = 2 * k as i64;
    Ok(segs(
        (1..=k as i64)
            .map(|i| seg((q(0, 1), q(2 * i - 1, d)), (q(1, 1), q(2 * i - 1, d))))
            .collect(),
    ))
}

/// Inverse of the full tent map.
pub fn tent_inverse() -> Relation {
    segs(vec![
        seg((q(0, 1), q(0, 1)), (q(1, 1), q(1, 2))),
        seg((q(1, 1), q(1, 2)), (q(0, 1), q(1, 1))),
    ])
}

/// Boundary of the diamond with vertices at the edge midpoints.
pub fn kt_diamond() -> Relation {
    segs(vec![
        seg((q(0, 1), q(1, 2)), (q(1, 2), q(1, 1))),
        seg((q(1, 2), q(1, 1)), (q(1, 1), q(1, 2))),
        seg((q(1, 1), q(1, 2)), (q(1, 2), q(0, 1))),
        seg((q(1, 2), q(0, 1)), (q(0, 1), q(1, 2))),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(g_n(3).unwrap().as_points().unwrap().len(), 9);
        assert_eq!(l_n(4).unwrap().as_points().unwrap().len(), 10);
        assert_eq!(g_a(3, GaReading::Figure).unwrap().as_points().unwrap().len(), 7);
        assert_eq!(g_a(3, GaReading::Paper).unwrap().as_points().unwrap().len(), 5);
        assert_eq!(l_n(1).unwrap(), four_corners());
    }

    #[test]
    fn embedded_l_n() {
        let host = triangle_plus_point(q(1, 4), q(3, 4)).unwrap();
        let l = l_n_pq(4, q(1, 4), q(3, 4)).unwrap();
        for p in l.as_points().unwrap().points() {
            assert!(host.member(p).unwrap());
        }
    }

    #[test]
    fn memberships() {
        assert!(empty_rect().member(&[q(2, 3), q(1, 3)]).unwrap());
        assert!(!empty_rect().member(&[q(1, 2), q(0, 1)]).unwrap());
        assert!(parabola().member(&[q(1, 2), q(1, 4)]).unwrap());
        assert!(!parabola().member(&[q(1, 2), q(1, 3)]).unwrap());
        assert!(kt_diamond().member(&[q(1, 4), q(3, 4)]).unwrap());
        assert!(tent_inverse().member(&[q(1, 2), q(3, 4)]).unwrap());
    }
}
