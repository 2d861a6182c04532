//! Box counts of Mahavier powers on product grids.
//!
//! A chain of grid cells `(i_0, …, i_{mN})` is followed coordinate by coordinate while
//! tracking the set of values the current coordinate can take on some chain of `G`.
//! Prefixes that reach the same state are merged and only their number is kept, so
//! the count of `n^(mN+1)` boxes costs time proportional to the number of states.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::exec::{Executor, Sequential};
use crate::grid::GridSpec;
use crate::interval::{Interval, IntervalSet};
use crate::relation::{Relation, DEFAULT_FEASIBILITY_DEPTH, DEFAULT_IMAGE_DEPTH};
use crate::scalar::ln_biguint;

pub const DEFAULT_BUDGET: usize = 100_000;

/// Which way chains are followed. Counts agree in both directions; the reverse
/// run follows the inverted relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Reverse,
    /// Forward, switching to reverse if the forward run exceeds the budget.
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountOptions {
    /// Maximum number of states kept per coordinate position.
    pub budget: usize,
    pub direction: Direction,
    pub feasibility_depth: u32,
    pub image_depth: u32,
    /// Endpoints with longer denominators are rounded to this many binary digits.
    pub round_bits: u32,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            budget: DEFAULT_BUDGET,
            direction: Direction::Auto,
            feasibility_depth: DEFAULT_FEASIBILITY_DEPTH,
            image_depth: DEFAULT_IMAGE_DEPTH,
            round_bits: 64,
        }
    }
}

impl CountOptions {
    pub fn with_budget(budget: usize) -> CountOptions {
        CountOptions {
            budget,
            ..CountOptions::default()
        }
    }
}

/// Where a chain prefix stands: the current cell, the values the current
/// coordinate can take, and the cells already chosen inside the current block.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainState {
    pub cell_index: usize,
    pub reachable: IntervalSet,
    pub pending: Vec<usize>,
}

/// Box count at one depth, as a certified bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountEntry {
    pub m: usize,
    pub lower: BigUint,
    pub upper: BigUint,
    /// The state budget was exceeded at or before this depth.
    pub budget: bool,
}

impl CountEntry {
    pub fn exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn a_lower(&self) -> f64 {
        ln_biguint(&self.lower)
    }

    pub fn a_upper(&self) -> f64 {
        ln_biguint(&self.upper)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSeries {
    pub grid: GridSpec,
    pub arity: usize,
    pub entries: Vec<CountEntry>,
}

impl CountSeries {
    pub fn exact(&self) -> bool {
        self.entries.iter().all(CountEntry::exact)
    }

    pub fn any_budget(&self) -> bool {
        self.entries.iter().any(|e| e.budget)
    }

    pub fn m_max(&self) -> usize {
        self.entries.len()
    }

    /// Entry for depth `m` (1-based).
    pub fn entry(&self, m: usize) -> &CountEntry {
        &self.entries[m - 1]
    }

    /// `a_m` from the upper brackets.
    pub fn a_upper(&self) -> Vec<f64> {
        self.entries.iter().map(CountEntry::a_upper).collect()
    }

    pub fn a_lower(&self) -> Vec<f64> {
        self.entries.iter().map(CountEntry::a_lower).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pass {
    Outer,
    Inner,
}

struct PassOutcome {
    counts: Vec<BigUint>,
    /// First depth whose count was affected by truncation.
    truncated_from: Option<usize>,
    inexact: bool,
    aborted: bool,
}

struct Stepper<'a> {
    g: &'a Relation,
    grid: &'a GridSpec,
    opts: &'a CountOptions,
    pass: Pass,
    step: usize,
}

impl Stepper<'_> {
    fn initial(&self) -> BTreeMap<ChainState, BigUint> {
        let mut out = BTreeMap::new();
        for (i, cell) in self.grid.cells().iter().enumerate() {
            let s = IntervalSet::from_interval(cell.clone());
            if self.g.prefix_feasible(&s, &[], self.opts.feasibility_depth) {
                out.insert(
                    ChainState {
                        cell_index: i,
                        reachable: s,
                        pending: Vec::new(),
                    },
                    BigUint::one(),
                );
            }
        }
        out
    }

    /// Successor states of `st`, and whether any enclosure used was inexact.
    fn successors(&self, st: &ChainState) -> (Vec<ChainState>, bool) {
        let cells = self.grid.cells();
        let middle: Vec<Interval> = st.pending.iter().map(|&c| cells[c].clone()).collect();
        let mut out = Vec::new();
        let mut inexact = false;
        if st.pending.len() + 1 < self.step {
            for c in 0..cells.len() {
                let mut m = middle.clone();
                m.push(cells[c].clone());
                if self.g.prefix_feasible(&st.reachable, &m, self.opts.feasibility_depth) {
                    let mut pending = st.pending.clone();
                    pending.push(c);
                    out.push(ChainState {
                        cell_index: st.cell_index,
                        reachable: st.reachable.clone(),
                        pending,
                    });
                }
            }
            return (out, inexact);
        }
        let images = self
            .g
            .block_images(&st.reachable, &middle, cells, self.opts.image_depth);
        for (c, br) in images.into_iter().enumerate() {
            if !br.is_exact() {
                inexact = true;
            }
            let mut s = match self.pass {
                Pass::Outer => br.outer,
                Pass::Inner => br.inner,
            };
            if s.max_denom_bits() > self.opts.round_bits as u64 {
                s = s
                    .round_dyadic(self.opts.round_bits, self.pass == Pass::Outer)
                    .intersect_interval(&cells[c]);
                inexact = true;
            }
            if !s.is_empty() {
                out.push(ChainState {
                    cell_index: c,
                    reachable: s,
                    pending: Vec::new(),
                });
            }
        }
        (out, inexact)
    }

    fn run<E: Executor>(&self, m_max: usize, exec: &E, abort_on_budget: bool) -> PassOutcome {
        let mut frontier = self.initial();
        let mut counts = Vec::with_capacity(m_max);
        let mut truncated_from = None;
        let mut inexact = false;
        for k in 0..m_max * self.step {
            let states: Vec<(ChainState, BigUint)> = core::mem::take(&mut frontier).into_iter().collect();
            let expanded = exec.map(&states, |(st, _)| self.successors(st));
            let mut next: BTreeMap<ChainState, BigUint> = BTreeMap::new();
            for ((_, count), (succ, flag)) in states.iter().zip(expanded) {
                inexact |= flag;
                for s in succ {
                    *next.entry(s).or_insert_with(BigUint::zero) += count;
                }
            }
            let position = k + 1;
            if next.len() > self.opts.budget {
                if truncated_from.is_none() {
                    truncated_from = Some(position.div_ceil(self.step));
                }
                if abort_on_budget {
                    return PassOutcome {
                        counts,
                        truncated_from,
                        inexact,
                        aborted: true,
                    };
                }
                next = next.into_iter().take(self.opts.budget).collect();
            }
            frontier = next;
            if position % self.step == 0 {
                counts.push(frontier.values().fold(BigUint::zero(), |a, b| a + b));
            }
        }
        PassOutcome {
            counts,
            truncated_from,
            inexact,
            aborted: false,
        }
    }
}

fn full_count(n: usize, m: usize, step: usize) -> BigUint {
    num_traits::pow(BigUint::from(n), m * step + 1)
}

/// Outer pass, plus an inner pass when some enclosure was inexact.
fn bracket_series<E: Executor>(
    g: &Relation,
    grid: &GridSpec,
    m_max: usize,
    opts: &CountOptions,
    exec: &E,
    abort_on_budget: bool,
) -> Option<Vec<CountEntry>> {
    let step = g.arity() - 1;
    let outer = Stepper {
        g,
        grid,
        opts,
        pass: Pass::Outer,
        step,
    }
    .run(m_max, exec, abort_on_budget);
    if outer.aborted {
        return None;
    }
    let inner = if outer.inexact {
        Some(
            Stepper {
                g,
                grid,
                opts,
                pass: Pass::Inner,
                step,
            }
            .run(m_max, exec, false),
        )
    } else {
        None
    };
    let cut = |t: Option<usize>, m: usize| t.is_some_and(|d| d <= m);
    let entries = (1..=m_max)
        .map(|m| {
            let outer_cut = cut(outer.truncated_from, m);
            let upper = if outer_cut {
                full_count(grid.n(), m, step)
            } else {
                outer.counts[m - 1].clone()
            };
            let (lower, inner_cut) = match &inner {
                Some(p) => (p.counts[m - 1].clone(), cut(p.truncated_from, m)),
                None => (outer.counts[m - 1].clone(), false),
            };
            CountEntry {
                m,
                lower: lower.min(upper.clone()),
                upper,
                budget: outer_cut || inner_cut,
            }
        })
        .collect();
    Some(entries)
}

/// Counts for every depth `1..=m_max` with explicit options and executor.
pub fn count_series_with<E: Executor>(
    g: &Relation,
    grid: &GridSpec,
    m_max: usize,
    opts: &CountOptions,
    exec: &E,
) -> Result<CountSeries, Error> {
    if m_max < 1 {
        return Err(Error::InvalidDepth(m_max));
    }
    let wrap = |entries| CountSeries {
        grid: grid.clone(),
        arity: g.arity(),
        entries,
    };
    if g.is_empty_relation() {
        let zero = (1..=m_max)
            .map(|m| CountEntry {
                m,
                lower: BigUint::zero(),
                upper: BigUint::zero(),
                budget: false,
            })
            .collect();
        return Ok(wrap(zero));
    }
    let entries = match opts.direction {
        Direction::Forward => bracket_series(g, grid, m_max, opts, exec, false),
        Direction::Reverse => bracket_series(&g.invert(), grid, m_max, opts, exec, false),
        Direction::Auto => match bracket_series(g, grid, m_max, opts, exec, true) {
            Some(e) => Some(e),
            None => {
                let rev = bracket_series(&g.invert(), grid, m_max, opts, exec, false)
                    .expect("not aborted");
                if rev.iter().any(|e| e.budget) {
                    let fwd = bracket_series(g, grid, m_max, opts, exec, false).expect("not aborted");
                    Some(tighten(fwd, rev))
                } else {
                    Some(rev)
                }
            }
        },
    };
    Ok(wrap(entries.expect("not aborted")))
}

/// Intersection of two certified brackets of the same counts.
fn tighten(a: Vec<CountEntry>, b: Vec<CountEntry>) -> Vec<CountEntry> {
    a.into_iter()
        .zip(b)
        .map(|(x, y)| {
            let lower = x.lower.max(y.lower);
            let upper = x.upper.min(y.upper);
            CountEntry {
                m: x.m,
                budget: x.budget && y.budget && lower != upper,
                lower,
                upper,
            }
        })
        .collect()
}

/// Counts for every depth `1..=m_max` with a state budget, sequentially.
pub fn count_series(g: &Relation, grid: &GridSpec, m_max: usize, budget: usize) -> Result<CountSeries, Error> {
    count_series_with(g, grid, m_max, &CountOptions::with_budget(budget), &Sequential)
}

/// Number of boxes of the `mN+1`-fold product grid that meet the `m`-th Mahavier power.
pub fn count_boxes(g: &Relation, grid: &GridSpec, m: usize, budget: usize) -> Result<CountEntry, Error> {
    let s = count_series(g, grid, m, budget)?;
    Ok(s.entries[m - 1].clone())
}

/// Outcome of checking `N_{m+k} <= N_m N_k` across a series.
#[derive(Clone, Debug, PartialEq)]
pub struct SubadditivityReport {
    pub pairs_checked: usize,
    /// Pairs `(m, k)` with `lower(m+k) > upper(m) * upper(k)`.
    pub violations: Vec<(usize, usize)>,
    /// `min_{j <= m} a_j / j` from upper brackets, per depth.
    pub running_inf: Vec<f64>,
}

impl SubadditivityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks subadditivity of `a_m = ln N_m` in exact integer form.
pub fn subadditivity_check(series: &CountSeries) -> SubadditivityReport {
    let e = &series.entries;
    let mut violations = Vec::new();
    let mut pairs = 0;
    for m in 1..=e.len() {
        for k in 1..=m {
            if m + k > e.len() {
                break;
            }
            pairs += 1;
            let lhs = &e[m + k - 1].lower;
            let rhs = &e[m - 1].upper * &e[k - 1].upper;
            if *lhs > rhs {
                violations.push((m, k));
            }
        }
    }
    let mut running_inf = Vec::with_capacity(e.len());
    let mut best = f64::INFINITY;
    for (i, entry) in e.iter().enumerate() {
        best = best.min(entry.a_upper() / (i + 1) as f64);
        running_inf.push(best);
    }
    SubadditivityReport {
        pairs_checked: pairs,
        violations,
        running_inf,
    }
}

/// Counts for depth `m` by enumerating every index tuple (test oracle for tiny grids).
pub fn count_by_enumeration(g: &Relation, grid: &GridSpec, m: usize) -> Result<BigUint, Error> {
    let product = crate::mahavier::star_power(g, m)?;
    let mut seen: alloc::collections::BTreeSet<Vec<usize>> = alloc::collections::BTreeSet::new();
    for t in product.tuples() {
        let mut choices: Vec<Vec<usize>> = vec![Vec::new()];
        for x in t {
            let cells = grid.cells_containing(x);
            let mut next = Vec::new();
            for prefix in &choices {
                for &c in &cells {
                    let mut p = prefix.clone();
                    p.push(c);
                    next.push(p);
                }
            }
            choices = next;
        }
        seen.extend(choices);
    }
    Ok(BigUint::from(seen.len()))
}
