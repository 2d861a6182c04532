//! Transition digraphs of finite relations.
//!
//! Nodes are the points of the relation in sorted order; there is an edge `p -> q`
//! when the last coordinate of `p` equals the first coordinate of `q`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::relation::Relation;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionGraph {
    nodes: Vec<Vec<Scalar>>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    arity_step: usize,
}

impl TransitionGraph {
    pub fn from_relation(g: &Relation) -> Result<TransitionGraph, Error> {
        let points = g.as_points().ok_or(Error::NotFinite)?;
        Ok(TransitionGraph::from_points(points.points().to_vec(), g.arity() - 1))
    }

    /// Builds the graph from already sorted, distinct tuples.
    pub fn from_points(nodes: Vec<Vec<Scalar>>, arity_step: usize) -> TransitionGraph {
        let mut by_first: BTreeMap<&Scalar, Vec<usize>> = BTreeMap::new();
        for (i, p) in nodes.iter().enumerate() {
            by_first.entry(&p[0]).or_default().push(i);
        }
        let mut succ = vec![Vec::new(); nodes.len()];
        let mut pred = vec![Vec::new(); nodes.len()];
        for (i, p) in nodes.iter().enumerate() {
            if let Some(targets) = by_first.get(&p[p.len() - 1]) {
                for &j in targets {
                    succ[i].push(j);
                    pred[j].push(i);
                }
            }
        }
        for list in pred.iter_mut() {
            list.sort_unstable();
        }
        TransitionGraph {
            nodes,
            succ,
            pred,
            arity_step,
        }
    }

    /// Graph from an explicit successor list (used for tests and sub-graphs).
    pub fn from_adjacency(succ: Vec<Vec<usize>>) -> TransitionGraph {
        let n = succ.len();
        let mut pred = vec![Vec::new(); n];
        let mut succ = succ;
        for (i, list) in succ.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            for &j in list.iter() {
                pred[j].push(i);
            }
        }
        TransitionGraph {
            nodes: (0..n).map(|_| Vec::new()).collect(),
            succ,
            pred,
            arity_step: 1,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Vec<Scalar>] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &[Scalar] {
        &self.nodes[i]
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.pred[i]
    }

    pub fn arity_step(&self) -> usize {
        self.arity_step
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.succ[i].binary_search(&j).is_ok()
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency(&self) -> Vec<Vec<u8>> {
        let n = self.len();
        let mut a = vec![vec![0u8; n]; n];
        for (i, list) in self.succ.iter().enumerate() {
            for &j in list {
                a[i][j] = 1;
            }
        }
        a
    }

    /// Strongly connected components, each sorted, listed by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let comp = self.component_ids();
        let count = comp.iter().copied().max().map_or(0, |c| c + 1);
        let mut out = vec![Vec::new(); count];
        for (v, &c) in comp.iter().enumerate() {
            out[c].push(v);
        }
        out.sort_by_key(|c| c[0]);
        out
    }

    /// Component id per node (Tarjan, iterative).
    fn component_ids(&self) -> Vec<usize> {
        let n = self.len();
        const UNSET: usize = usize::MAX;
        let mut index = vec![UNSET; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut comp = vec![UNSET; n];
        let mut next_index = 0;
        let mut next_comp = 0;
        for root in 0..n {
            if index[root] != UNSET {
                continue;
            }
            let mut work: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut pos)) = work.last_mut() {
                if *pos < self.succ[v].len() {
                    let w = self.succ[v][*pos];
                    *pos += 1;
                    if index[w] == UNSET {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        work.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    work.pop();
                    if let Some(&(parent, _)) = work.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        loop {
                            let w = stack.pop().expect("tarjan stack");
                            on_stack[w] = false;
                            comp[w] = next_comp;
                            if w == v {
                                break;
                            }
                        }
                        next_comp += 1;
                    }
                }
            }
        }
        comp
    }

    /// Components that carry a cycle (more than one node, or a self-loop).
    pub fn cyclic_components(&self) -> Vec<Vec<usize>> {
        self.components()
            .into_iter()
            .filter(|c| c.len() > 1 || self.has_edge(c[0], c[0]))
            .collect()
    }

    pub fn has_cycle(&self) -> bool {
        !self.cyclic_components().is_empty()
    }

    /// Nodes lying on some cycle, ascending.
    pub fn cycle_nodes(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.cyclic_components().into_iter().flatten().collect();
        out.sort_unstable();
        out
    }

    /// First cycle found by depth-first search in node order, as a node sequence.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let n = self.len();
        // 0 = unvisited, 1 = on path, 2 = done
        let mut state = vec![0u8; n];
        for root in 0..n {
            if state[root] != 0 {
                continue;
            }
            let mut path: Vec<(usize, usize)> = vec![(root, 0)];
            state[root] = 1;
            while let Some(&mut (v, ref mut pos)) = path.last_mut() {
                if *pos < self.succ[v].len() {
                    let w = self.succ[v][*pos];
                    *pos += 1;
                    match state[w] {
                        0 => {
                            state[w] = 1;
                            path.push((w, 0));
                        }
                        1 => {
                            let start = path.iter().position(|&(u, _)| u == w).expect("on path");
                            return Some(path[start..].iter().map(|&(u, _)| u).collect());
                        }
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                    path.pop();
                }
            }
        }
        None
    }

    /// Nodes surviving repeated deletion of nodes with no predecessor or no successor.
    pub fn kernel_nodes(&self) -> Vec<usize> {
        let n = self.len();
        let mut alive = vec![true; n];
        let mut indeg: Vec<usize> = self.pred.iter().map(Vec::len).collect();
        let mut outdeg: Vec<usize> = self.succ.iter().map(Vec::len).collect();
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0 || outdeg[v] == 0).collect();
        while let Some(v) = queue.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &w in &self.succ[v] {
                if alive[w] {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        queue.push(w);
                    }
                }
            }
            for &u in &self.pred[v] {
                if alive[u] {
                    outdeg[u] -= 1;
                    if outdeg[u] == 0 {
                        queue.push(u);
                    }
                }
            }
        }
        (0..n).filter(|&v| alive[v]).collect()
    }

    /// Induced subgraph on `keep` (ascending), renumbered in that order.
    pub fn induced(&self, keep: &[usize]) -> TransitionGraph {
        let mut map = vec![usize::MAX; self.len()];
        for (k, &v) in keep.iter().enumerate() {
            map[v] = k;
        }
        let succ: Vec<Vec<usize>> = keep
            .iter()
            .map(|&v| {
                self.succ[v]
                    .iter()
                    .filter(|&&w| map[w] != usize::MAX)
                    .map(|&w| map[w])
                    .collect()
            })
            .collect();
        let mut g = TransitionGraph::from_adjacency(succ);
        g.nodes = keep.iter().map(|&v| self.nodes[v].clone()).collect();
        g.arity_step = self.arity_step;
        g
    }

    /// Number of walks through `m` nodes, i.e. the sum of the entries of `A^(m-1)`.
    pub fn walk_count(&self, m: usize) -> BigUint {
        if m == 0 {
            return BigUint::one();
        }
        let mut v = vec![BigUint::one(); self.len()];
        for _ in 1..m {
            v = self.step_back(&v);
        }
        v.into_iter().fold(BigUint::zero(), |a, b| a + b)
    }

    /// Walk counts for `m = 1..=m_max` in one pass.
    pub fn walk_counts(&self, m_max: usize) -> Vec<BigUint> {
        let mut out = Vec::with_capacity(m_max);
        let mut v = vec![BigUint::one(); self.len()];
        for m in 1..=m_max {
            if m > 1 {
                v = self.step_back(&v);
            }
            out.push(v.iter().fold(BigUint::zero(), |a, b| a + b));
        }
        out
    }

    /// `w = A v`
    fn step_back(&self, v: &[BigUint]) -> Vec<BigUint> {
        self.succ
            .iter()
            .map(|list| list.iter().fold(BigUint::zero(), |acc, &j| acc + &v[j]))
            .collect()
    }

    /// `trace(A^p)`: the number of closed walks of length `p`.
    pub fn trace_power(&self, p: usize) -> BigUint {
        let n = self.len();
        let mut total = BigUint::zero();
        for s in 0..n {
            let mut v = vec![BigUint::zero(); n];
            v[s] = BigUint::one();
            for _ in 0..p {
                v = self.step_back(&v);
            }
            total += &v[s];
        }
        total
    }
}
