//! Shift dynamics of finite relations, read off the transition graph.
//!
//! Transitivity and periodic density are judged on the kernel: the nodes lying on
//! chains that extend forever in both directions.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::TransitionGraph;
use crate::relation::Relation;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicsReport {
    pub node_count: usize,
    /// The kernel is nonempty and forms one strongly connected component.
    pub strongly_connected: bool,
    /// `p -> trace(A^p)`
    pub periodic_counts: BTreeMap<usize, BigUint>,
    /// Nodes on some cycle.
    pub recurrent_nodes: Vec<Vec<Scalar>>,
    pub kernel_nodes: Vec<Vec<Scalar>>,
    /// Every kernel edge lies on a cycle.
    pub dense_periodic: bool,
    /// Transitive, periodically dense, and not a single periodic orbit.
    pub devaney: bool,
}

pub fn analyze(g: &Relation, max_period: usize) -> Result<DynamicsReport, Error> {
    let graph = TransitionGraph::from_relation(g)?;
    Ok(analyze_graph(&graph, max_period))
}

pub fn analyze_graph(graph: &TransitionGraph, max_period: usize) -> DynamicsReport {
    let kernel = graph.kernel_nodes();
    let sub = graph.induced(&kernel);
    let comps = sub.components();
    let strongly_connected = !kernel.is_empty() && comps.len() == 1;
    let mut comp_of = alloc::vec![usize::MAX; sub.len()];
    for (c, members) in comps.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }
    let cyclic: Vec<bool> = comps
        .iter()
        .map(|c| c.len() > 1 || sub.has_edge(c[0], c[0]))
        .collect();
    let dense_periodic = !kernel.is_empty()
        && (0..sub.len()).all(|v| {
            sub.successors(v)
                .iter()
                .all(|&w| comp_of[v] == comp_of[w] && cyclic[comp_of[v]])
        });
    let single_cycle = sub.edge_count() == sub.len();
    let devaney = strongly_connected && dense_periodic && !single_cycle;
    let periodic_counts = (1..=max_period).map(|p| (p, graph.trace_power(p))).collect();
    DynamicsReport {
        node_count: graph.len(),
        strongly_connected,
        periodic_counts,
        recurrent_nodes: graph
            .cycle_nodes()
            .into_iter()
            .map(|v| graph.node(v).to_vec())
            .collect(),
        kernel_nodes: kernel.iter().map(|&v| graph.node(v).to_vec()).collect(),
        dense_periodic,
        devaney,
    }
}

/// Nodes split into those on or between cycles, and the wandering rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WanderingPartition {
    /// On a cycle.
    pub recurrent: Vec<Vec<Scalar>>,
    /// Not on a cycle but on a path from one cycle to another.
    pub transitional: Vec<Vec<Scalar>>,
    pub wandering: Vec<Vec<Scalar>>,
}

pub fn wandering_partition(g: &Relation) -> Result<WanderingPartition, Error> {
    let graph = TransitionGraph::from_relation(g)?;
    let kernel = graph.kernel_nodes();
    let on_cycle = graph.cycle_nodes();
    let mut out = WanderingPartition {
        recurrent: Vec::new(),
        transitional: Vec::new(),
        wandering: Vec::new(),
    };
    for v in 0..graph.len() {
        let p = graph.node(v).to_vec();
        if on_cycle.binary_search(&v).is_ok() {
            out.recurrent.push(p);
        } else if kernel.binary_search(&v).is_ok() {
            out.transitional.push(p);
        } else {
            out.wandering.push(p);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitPolicy {
    /// Always step to the smallest successor point.
    Lexicographic,
    /// Uniform choice among successors from a seeded ChaCha stream.
    RandomSeeded(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitStream {
    pub coords: Vec<Scalar>,
    /// The walk reached a point without successors before `length` coordinates.
    pub dead_end: bool,
}

/// A prefix of a point of the infinite product starting at point `start`.
pub fn orbit_stream(
    g: &Relation,
    start: &[Scalar],
    policy: OrbitPolicy,
    length: usize,
) -> Result<OrbitStream, Error> {
    let graph = TransitionGraph::from_relation(g)?;
    let points = g.as_points().ok_or(Error::NotFinite)?;
    let mut v = points
        .index_of(start)
        .ok_or(Error::InvalidInput("start point is not in the relation"))?;
    let mut rng = match policy {
        OrbitPolicy::RandomSeeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        OrbitPolicy::Lexicographic => None,
    };
    let mut coords: Vec<Scalar> = graph.node(v).to_vec();
    while coords.len() < length {
        let succ = graph.successors(v);
        if succ.is_empty() {
            coords.truncate(length);
            return Ok(OrbitStream {
                coords,
                dead_end: true,
            });
        }
        v = match &mut rng {
            None => succ[0],
            Some(r) => succ[(r.next_u64() % succ.len() as u64) as usize],
        };
        coords.extend(graph.node(v)[1..].iter().cloned());
    }
    coords.truncate(length);
    Ok(OrbitStream {
        coords,
        dead_end: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use alloc::vec;

    fn ints(list: &[(i64, i64)]) -> Relation {
        Relation::points(2, list.iter().map(|&(a, b)| vec![q(a, 1), q(b, 1)]).collect()).unwrap()
    }

    #[test]
    fn four_corners() {
        let r = analyze(&ints(&[(0, 0), (0, 1), (1, 0), (1, 1)]), 2).unwrap();
        assert!(r.strongly_connected && r.dense_periodic && r.devaney);
        assert_eq!(r.periodic_counts[&1], BigUint::from(2u32));
        assert_eq!(r.periodic_counts[&2], BigUint::from(4u32));
    }

    #[test]
    fn degenerate_cases() {
        let r = analyze(&ints(&[(0, 1)]), 3).unwrap();
        assert!(r.recurrent_nodes.is_empty() && !r.devaney && !r.strongly_connected);
        let r = analyze(&ints(&[(0, 0), (1, 1)]), 1).unwrap();
        assert!(!r.strongly_connected);
        assert_eq!(r.periodic_counts[&1], BigUint::from(2u32));
        let cycle = Relation::points(
            2,
            vec![vec![q(0, 1), q(1, 2)], vec![q(1, 2), q(1, 1)], vec![q(1, 1), q(0, 1)]],
        )
        .unwrap();
        let r = analyze(&cycle, 3).unwrap();
        assert!(r.strongly_connected && r.dense_periodic && !r.devaney);
    }

    #[test]
    fn wandering() {
        let w = wandering_partition(&ints(&[(0, 0), (0, 1)])).unwrap();
        assert_eq!(w.wandering, vec![vec![q(0, 1), q(1, 1)]]);
        assert_eq!(w.recurrent, vec![vec![q(0, 1), q(0, 1)]]);
    }

    #[test]
    fn streams() {
        let core = ints(&[(0, 0), (1, 0), (0, 1)]);
        let s = orbit_stream(&core, &[q(0, 1), q(1, 1)], OrbitPolicy::Lexicographic, 5).unwrap();
        assert_eq!(s.coords, vec![q(0, 1), q(1, 1), q(0, 1), q(0, 1), q(0, 1)]);
        let dead = orbit_stream(&ints(&[(0, 1)]), &[q(0, 1), q(1, 1)], OrbitPolicy::Lexicographic, 5).unwrap();
        assert!(dead.dead_end);
        assert_eq!(dead.coords.len(), 2);
        let a = orbit_stream(&core, &[q(0, 1), q(0, 1)], OrbitPolicy::RandomSeeded(7), 40).unwrap();
        let b = orbit_stream(&core, &[q(0, 1), q(0, 1)], OrbitPolicy::RandomSeeded(7), 40).unwrap();
        assert_eq!(a, b);
    }
}
