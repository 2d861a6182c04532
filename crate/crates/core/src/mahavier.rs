//! Explicit Mahavier products of finite relations, cycle certificates, periodic
//! points and the kernel.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::error::Error;
use crate::graph::TransitionGraph;
use crate::relation::{PointSet, Relation};
use crate::scalar::Scalar;

/// Largest explicit product `star_power` will materialize.
pub const PRODUCT_LIMIT: usize = 5_000_000;

/// A finite product: distinct tuples, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitProduct {
    tuples: Vec<Vec<Scalar>>,
    arity: usize,
}

impl ExplicitProduct {
    pub fn tuples(&self) -> &[Vec<Scalar>] {
        &self.tuples
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn to_relation(&self) -> Relation {
        Relation::points(self.arity, self.tuples.clone()).expect("product tuples lie in the cube")
    }
}

fn finite(g: &Relation) -> Result<&PointSet, Error> {
    g.as_points().ok_or(Error::NotFinite)
}

/// Joins every tuple of `a` ending at `y` with every tuple of `b` starting at `y`.
pub fn star(a: &Relation, b: &Relation) -> Result<ExplicitProduct, Error> {
    let pa = finite(a)?;
    let pb = finite(b)?;
    join(pa.points(), a.arity(), pb.points(), b.arity(), usize::MAX)
}

fn join(
    left: &[Vec<Scalar>],
    left_arity: usize,
    right: &[Vec<Scalar>],
    right_arity: usize,
    limit: usize,
) -> Result<ExplicitProduct, Error> {
    let mut by_first: BTreeMap<&Scalar, Vec<&Vec<Scalar>>> = BTreeMap::new();
    for t in right {
        by_first.entry(&t[0]).or_default().push(t);
    }
    let mut tuples = Vec::new();
    for s in left {
        if let Some(list) = by_first.get(&s[left_arity - 1]) {
            for t in list {
                let mut joined = s.clone();
                joined.extend(t[1..].iter().cloned());
                tuples.push(joined);
                if tuples.len() > limit {
                    return Err(Error::TooLarge {
                        size: tuples.len(),
                        limit,
                    });
                }
            }
        }
    }
    tuples.sort();
    tuples.dedup();
    Ok(ExplicitProduct {
        tuples,
        arity: left_arity + right_arity - 1,
    })
}

/// `G ⋆ G ⋆ … ⋆ G` with `m` factors.
pub fn star_power(g: &Relation, m: usize) -> Result<ExplicitProduct, Error> {
    if m < 1 {
        return Err(Error::InvalidDepth(m));
    }
    let p = finite(g)?;
    let mut acc = ExplicitProduct {
        tuples: p.points().to_vec(),
        arity: g.arity(),
    };
    for _ in 1..m {
        acc = join(&acc.tuples, acc.arity, p.points(), g.arity(), PRODUCT_LIMIT)?;
    }
    Ok(acc)
}

/// A closed chain of points of a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleCertificate {
    pub cycle: Vec<Vec<Scalar>>,
    pub length: usize,
}

impl CycleCertificate {
    /// One period of the coordinate stream generated by repeating the cycle.
    pub fn stream(&self) -> Vec<Scalar> {
        period_stream(&self.cycle)
    }

    /// Checks the link condition around the cycle and membership of every point.
    pub fn verify(&self, g: &Relation) -> bool {
        let k = self.cycle.len();
        k == self.length
            && k > 0
            && (0..k).all(|i| {
                let p = &self.cycle[i];
                let q = &self.cycle[(i + 1) % k];
                p.last() == q.first() && g.member(p).unwrap_or(false)
            })
    }
}

fn period_stream(cycle: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut out = Vec::new();
    for p in cycle {
        out.extend(p[..p.len() - 1].iter().cloned());
    }
    out
}

/// Whether the infinite product is nonempty, with a cycle as certificate when it is.
pub fn infinite_nonempty(g: &Relation) -> Result<(bool, Option<CycleCertificate>), Error> {
    let graph = TransitionGraph::from_relation(g)?;
    Ok(match graph.find_cycle() {
        Some(nodes) => {
            let cycle: Vec<Vec<Scalar>> = nodes.iter().map(|&v| graph.node(v).to_vec()).collect();
            let length = cycle.len();
            (true, Some(CycleCertificate { cycle, length }))
        }
        None => (false, None),
    })
}

/// Periodic points of a given period.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicPoints {
    /// `trace(A^p)`
    pub count: BigUint,
    /// One period of the stream for each closed walk, capped at `REPRESENTATIVE_LIMIT`.
    pub representatives: Vec<Vec<Scalar>>,
}

pub const REPRESENTATIVE_LIMIT: usize = 4096;

pub fn periodic_points(g: &Relation, p: usize) -> Result<PeriodicPoints, Error> {
    if p < 1 {
        return Err(Error::InvalidDepth(p));
    }
    let graph = TransitionGraph::from_relation(g)?;
    let count = graph.trace_power(p);
    let mut representatives = Vec::new();
    for start in 0..graph.len() {
        let mut walk = alloc::vec![start];
        closed_walks(&graph, p, &mut walk, &mut representatives);
        if representatives.len() >= REPRESENTATIVE_LIMIT {
            representatives.truncate(REPRESENTATIVE_LIMIT);
            break;
        }
    }
    Ok(PeriodicPoints {
        count,
        representatives,
    })
}

fn closed_walks(g: &TransitionGraph, p: usize, walk: &mut Vec<usize>, out: &mut Vec<Vec<Scalar>>) {
    if out.len() >= REPRESENTATIVE_LIMIT {
        return;
    }
    let last = *walk.last().expect("nonempty walk");
    if walk.len() == p {
        if g.has_edge(last, walk[0]) {
            let cycle: Vec<Vec<Scalar>> = walk.iter().map(|&v| g.node(v).to_vec()).collect();
            out.push(period_stream(&cycle));
        }
        return;
    }
    for &next in g.successors(last) {
        walk.push(next);
        closed_walks(g, p, walk, out);
        walk.pop();
    }
}

/// Restriction of `g` to the points on bi-infinite chains.
pub fn kernel(g: &Relation) -> Result<Relation, Error> {
    let graph = TransitionGraph::from_relation(g)?;
    let keep: Vec<Vec<Scalar>> = graph
        .kernel_nodes()
        .into_iter()
        .map(|v| graph.node(v).to_vec())
        .collect();
    Relation::points(g.arity(), keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use alloc::vec;

    fn pts(list: &[(i64, i64, i64, i64)]) -> Relation {
        Relation::points(
            2,
            list.iter().map(|&(a, b, c, d)| vec![q(a, b), q(c, d)]).collect(),
        )
        .unwrap()
    }

    fn ints(list: &[(i64, i64)]) -> Relation {
        pts(&list.iter().map(|&(a, b)| (a, 1, b, 1)).collect::<Vec<_>>())
    }

    #[test]
    fn star_examples() {
        let a = ints(&[(0, 1), (1, 0)]);
        let p = star(&a, &a).unwrap();
        assert_eq!(p.tuples(), &[vec![q(0, 1), q(1, 1), q(0, 1)], vec![q(1, 1), q(0, 1), q(1, 1)]]);

        let g = ints(&[(1, 0), (1, 1), (0, 0)]);
        let p = star(&g, &g).unwrap();
        let expect: Vec<Vec<Scalar>> = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)]
            .iter()
            .map(|&(a, b, c)| vec![q(a, 1), q(b, 1), q(c, 1)])
            .collect();
        assert_eq!(p.tuples(), expect.as_slice());

        let a = pts(&[(2, 3, 0, 1)]);
        let b = pts(&[(1, 1, 1, 3)]);
        assert!(star(&a, &b).unwrap().is_empty());
    }

    #[test]
    fn powers() {
        let corners = ints(&[(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(star_power(&corners, 2).unwrap().len(), 8);
        assert_eq!(star_power(&corners, 1).unwrap().to_relation(), corners);
        assert!(star_power(&ints(&[(0, 1)]), 2).unwrap().is_empty());
        assert!(star_power(&corners, 0).is_err());
    }

    #[test]
    fn cycles_and_periods() {
        let g = pts(&[(1, 4, 3, 4), (3, 4, 1, 4)]);
        let (ok, cert) = infinite_nonempty(&g).unwrap();
        assert!(ok);
        let cert = cert.unwrap();
        assert_eq!(cert.length, 2);
        assert!(cert.verify(&g));
        assert_eq!(infinite_nonempty(&ints(&[(0, 1)])).unwrap(), (false, None));
        let tri = pts(&[(0, 1, 1, 2), (1, 2, 1, 1), (1, 1, 0, 1)]);
        assert_eq!(infinite_nonempty(&tri).unwrap().1.unwrap().length, 3);

        let corners = ints(&[(0, 0), (0, 1), (1, 0), (1, 1)]);
        let pp = periodic_points(&corners, 1).unwrap();
        assert_eq!(pp.count, BigUint::from(2u32));
        assert_eq!(pp.representatives, vec![vec![q(0, 1)], vec![q(1, 1)]]);
        let core = ints(&[(0, 0), (1, 0), (0, 1)]);
        assert_eq!(periodic_points(&core, 2).unwrap().count, BigUint::from(3u32));
        assert_eq!(periodic_points(&ints(&[(0, 1)]), 3).unwrap().count, BigUint::from(0u32));
    }

    #[test]
    fn kernels() {
        assert_eq!(kernel(&ints(&[(0, 0), (0, 1)])).unwrap(), ints(&[(0, 0)]));
        let corners = ints(&[(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert_eq!(kernel(&corners).unwrap(), corners);
        assert!(kernel(&ints(&[(0, 1)])).unwrap().is_empty_relation());
    }
}
