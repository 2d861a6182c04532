//! Smallest number of grid boxes covering an explicit finite product.
//!
//! Exact set cover by branch and bound, solved separately on each connected
//! component of the tuple/box incidence.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;
use crate::grid::GridSpec;
use crate::mahavier::ExplicitProduct;

/// Instances with more tuple/box incidences than this are declined.
pub const INCIDENCE_LIMIT: usize = 1_000_000;

fn boxes_of(tuple: &[crate::scalar::Scalar], grid: &GridSpec) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = alloc::vec![Vec::new()];
    for x in tuple {
        let cells = grid.cells_containing(x);
        let mut next = Vec::with_capacity(out.len() * cells.len());
        for prefix in &out {
            for &c in &cells {
                let mut b = prefix.clone();
                b.push(c);
                next.push(b);
            }
        }
        out = next;
    }
    out
}

/// Minimum number of boxes of `grid` whose union contains every tuple of `p`.
pub fn minimal_subcover(p: &ExplicitProduct, grid: &GridSpec) -> Result<usize, Error> {
    let mut box_index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut tuple_boxes: Vec<Vec<usize>> = Vec::with_capacity(p.len());
    let mut incidences = 0usize;
    for t in p.tuples() {
        let bs = boxes_of(t, grid);
        incidences += bs.len();
        if incidences > INCIDENCE_LIMIT {
            return Err(Error::TooLarge {
                size: incidences,
                limit: INCIDENCE_LIMIT,
            });
        }
        let mut ids: Vec<usize> = bs
            .into_iter()
            .map(|b| {
                let next = box_index.len();
                *box_index.entry(b).or_insert(next)
            })
            .collect();
        ids.sort_unstable();
        tuple_boxes.push(ids);
    }
    let mut box_tuples: Vec<Vec<usize>> = alloc::vec![Vec::new(); box_index.len()];
    for (t, bs) in tuple_boxes.iter().enumerate() {
        for &b in bs {
            box_tuples[b].push(t);
        }
    }
    let mut total = 0;
    for comp in components(&tuple_boxes, &box_tuples) {
        total += solve_component(&comp, &tuple_boxes, &box_tuples);
    }
    Ok(total)
}

fn components(tuple_boxes: &[Vec<usize>], box_tuples: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = alloc::vec![false; tuple_boxes.len()];
    let mut out = Vec::new();
    for s in 0..tuple_boxes.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = alloc::vec![s];
        let mut i = 0;
        while i < comp.len() {
            let t = comp[i];
            i += 1;
            for &b in &tuple_boxes[t] {
                for &u in &box_tuples[b] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                    }
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

struct Search<'a> {
    tuple_boxes: &'a [Vec<usize>],
    box_tuples: &'a [Vec<usize>],
    local: BTreeMap<usize, usize>,
    largest: usize,
    best: usize,
}

impl Search<'_> {
    fn run(&mut self, covered: &mut Vec<u32>, uncovered: usize, used: usize) {
        if uncovered == 0 {
            self.best = self.best.min(used);
            return;
        }
        let bound = uncovered.div_ceil(self.largest);
        if used + bound >= self.best {
            return;
        }
        let pick = self
            .local
            .iter()
            .filter(|&(_, &l)| covered[l] == 0)
            .min_by_key(|&(&t, _)| self.tuple_boxes[t].len())
            .map(|(&t, _)| t)
            .expect("uncovered tuple exists");
        let mut options: Vec<(usize, usize)> = self.tuple_boxes[pick]
            .iter()
            .map(|&b| {
                let gain = self.box_tuples[b]
                    .iter()
                    .filter(|t| covered[self.local[t]] == 0)
                    .count();
                (gain, b)
            })
            .collect();
        options.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (gain, b) in options {
            for t in &self.box_tuples[b] {
                covered[self.local[t]] += 1;
            }
            self.run(covered, uncovered - gain, used + 1);
            for t in &self.box_tuples[b] {
                covered[self.local[t]] -= 1;
            }
        }
    }
}

fn solve_component(comp: &[usize], tuple_boxes: &[Vec<usize>], box_tuples: &[Vec<usize>]) -> usize {
    let local: BTreeMap<usize, usize> = comp.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let largest = comp
        .iter()
        .flat_map(|&t| tuple_boxes[t].iter())
        .map(|&b| box_tuples[b].len())
        .max()
        .unwrap_or(1);
    let mut search = Search {
        tuple_boxes,
        box_tuples,
        local,
        largest,
        best: comp.len(),
    };
    let mut covered = alloc::vec![0u32; comp.len()];
    search.run(&mut covered, comp.len(), 0);
    search.best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mahavier::star_power;
    use crate::relation::Relation;
    use crate::scalar::q;
    use alloc::vec;

    #[test]
    fn corners_need_one_box_each() {
        let g = Relation::points(
            2,
            vec![vec![q(0, 1), q(0, 1)], vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)], vec![q(1, 1), q(1, 1)]],
        )
        .unwrap();
        let p = star_power(&g, 2).unwrap();
        let grid = GridSpec::overlap_default(4).unwrap();
        assert_eq!(minimal_subcover(&p, &grid).unwrap(), 8);
    }

    #[test]
    fn shared_boundary_points() {
        // Both points sit on the boundary between the two cells, so one box covers them.
        let g = Relation::points(2, vec![vec![q(1, 2), q(1, 2)], vec![q(1, 2), q(1, 4)]]).unwrap();
        let p = star_power(&g, 1).unwrap();
        let grid = GridSpec::overlap_default(2).unwrap();
        assert_eq!(minimal_subcover(&p, &grid).unwrap(), 1);
    }
}
