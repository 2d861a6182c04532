//! Spectral radius of 0/1 adjacency matrices.
//!
//! Each cyclic strongly connected block is handled on its own. On an irreducible block
//! `B`, the shifted matrix `B + I` is primitive, so power iteration converges even when
//! `B` is periodic. The Collatz–Wielandt quotients bracket the radius at every step.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::TransitionGraph;

/// Relative bracket width at which iteration stops.
pub const TOLERANCE: f64 = 1e-13;

const MAX_ITERATIONS: usize = 200_000;

/// Bracketed spectral radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralRadius {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    /// No cycles: the radius is zero and every long enough walk is impossible.
    pub acyclic: bool,
    pub iterations: usize,
}

pub fn spectral_radius(g: &TransitionGraph) -> SpectralRadius {
    let mut best = SpectralRadius {
        value: 0.0,
        lower: 0.0,
        upper: 0.0,
        acyclic: true,
        iterations: 0,
    };
    for comp in g.cyclic_components() {
        let r = block_radius(g, &comp);
        best.acyclic = false;
        best.iterations += r.iterations;
        if r.value > best.value {
            best.value = r.value;
            best.lower = r.lower;
            best.upper = r.upper;
        }
    }
    best
}

fn block_radius(g: &TransitionGraph, comp: &[usize]) -> SpectralRadius {
    let k = comp.len();
    let mut local = vec![usize::MAX; g.len()];
    for (i, &v) in comp.iter().enumerate() {
        local[v] = i;
    }
    let rows: Vec<Vec<usize>> = comp
        .iter()
        .map(|&v| {
            g.successors(v)
                .iter()
                .filter(|&&w| local[w] != usize::MAX)
                .map(|&w| local[w])
                .collect()
        })
        .collect();
    let out_deg: Vec<usize> = rows.iter().map(Vec::len).collect();
    if out_deg.iter().all(|&d| d == out_deg[0]) {
        // constant row sums give the radius directly
        let r = out_deg[0] as f64;
        return SpectralRadius {
            value: r,
            lower: r,
            upper: r,
            acyclic: false,
            iterations: 0,
        };
    }
    let mut x = vec![1.0f64; k];
    let mut y = vec![0.0f64; k];
    let mut lower = 0.0;
    let mut upper = f64::INFINITY;
    let mut it = 0;
    while it < MAX_ITERATIONS {
        it += 1;
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for i in 0..k {
            let s: f64 = x[i] + rows[i].iter().map(|&j| x[j]).sum::<f64>();
            y[i] = s;
            let q = s / x[i];
            lo = lo.min(q);
            hi = hi.max(q);
        }
        lower = f64::max(lower, lo - 1.0);
        upper = f64::min(upper, hi - 1.0);
        let norm = y.iter().cloned().fold(0.0, f64::max);
        for i in 0..k {
            x[i] = y[i] / norm;
        }
        if upper - lower <= TOLERANCE * (upper + 1.0) {
            break;
        }
    }
    SpectralRadius {
        value: 0.5 * (lower + upper),
        lower,
        upper,
        acyclic: false,
        iterations: it,
    }
}
