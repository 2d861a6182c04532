//! Entropy estimates: spectral radius for finite relations, limits of box-count
//! series along a family of grids, the power law for Mahavier powers, and box dimension.

use alloc::vec::Vec;
use core::f64::consts::LN_2;

use crate::counting::{count_series, CountSeries};
use crate::error::Error;
use crate::graph::TransitionGraph;
use crate::grid::GridSpec;
use crate::mahavier::star_power;
use crate::relation::Relation;
use crate::scalar::ln_biguint;
use crate::spectral::spectral_radius;

/// Minimum growth per doubling of `n` for a family to be flagged divergent.
///
/// A relation containing a product of two full intervals grows by `ln 2` per doubling,
/// one that only alternates between them grows by `ln 2 / 2`.
pub const DIVERGENCE_INCREMENT: f64 = 0.5 * LN_2 - 0.05;

/// Residual above which a dimension fit is not trusted.
pub const DIMENSION_RESIDUAL_LIMIT: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Transfer,
    FeketeInf,
    Slope,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Transfer => "transfer",
            Method::FeketeInf => "fekete",
            Method::Slope => "slope",
        }
    }
}

/// Estimates from the count series of one grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GridEstimate {
    pub n: usize,
    /// `min_m a_m / m` from upper brackets.
    pub fekete: f64,
    /// Least-squares slope of `a_m` against `m` over the upper half of the depths.
    pub slope: f64,
    /// Root-mean-square residual of that fit.
    pub residual: f64,
    /// `a_m / m` at the deepest depth.
    pub last: f64,
    pub exact: bool,
    pub budget: bool,
}

impl GridEstimate {
    pub fn value(&self, method: Method) -> f64 {
        match method {
            Method::FeketeInf => self.fekete,
            _ => self.slope,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntropyEstimate {
    /// Natural-log entropy; `f64::INFINITY` when divergent.
    pub value: f64,
    pub method: Method,
    pub per_grid: Vec<GridEstimate>,
    pub divergent: bool,
    /// The infinite product is empty (no cycle in the transition graph).
    pub empty: bool,
    /// Spectral-radius bracket for transfer estimates.
    pub radius: Option<(f64, f64)>,
    pub m_max: usize,
}

impl EntropyEstimate {
    pub fn value_bits(&self) -> f64 {
        self.value / LN_2
    }

    pub fn budget_flags(&self) -> bool {
        self.per_grid.iter().any(|g| g.budget)
    }
}

/// `ln ρ(A)` for the transition graph of a finite relation.
pub fn entropy_transfer(g: &Relation) -> Result<EntropyEstimate, Error> {
    let graph = TransitionGraph::from_relation(g)?;
    Ok(transfer_of_graph(&graph))
}

pub fn transfer_of_graph(graph: &TransitionGraph) -> EntropyEstimate {
    let r = spectral_radius(graph);
    let (value, radius) = if r.acyclic {
        (0.0, None)
    } else {
        (libm::log(r.value), Some((r.lower, r.upper)))
    };
    EntropyEstimate {
        value,
        method: Method::Transfer,
        per_grid: Vec::new(),
        divergent: false,
        empty: r.acyclic,
        radius,
        m_max: 0,
    }
}

/// Slope and RMS residual of the least-squares line through `(x, y)`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let k = xs.len() as f64;
    if xs.len() < 2 {
        return (0.0, 0.0);
    }
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (my + slope * (x - mx));
            r * r
        })
        .sum();
    (slope, libm::sqrt(rss / k))
}

pub fn grid_estimate(series: &CountSeries) -> GridEstimate {
    let upper = series.a_upper();
    let lower = series.a_lower();
    let m_max = upper.len();
    let mut fekete = f64::INFINITY;
    for (i, a) in upper.iter().enumerate() {
        fekete = fekete.min(a / (i + 1) as f64);
    }
    let start = m_max / 2;
    let xs: Vec<f64> = (start..m_max).map(|i| (i + 1) as f64).collect();
    let ys: Vec<f64> = lower[start..].to_vec();
    let (slope, residual) = if ys.iter().any(|y| !y.is_finite()) {
        (0.0, 0.0)
    } else {
        least_squares(&xs, &ys)
    };
    GridEstimate {
        n: series.grid.n(),
        fekete: fekete.max(0.0),
        slope: slope.max(0.0),
        residual,
        last: (lower[m_max - 1] / m_max as f64).max(0.0),
        exact: series.exact(),
        budget: series.any_budget(),
    }
}

/// Combines per-grid estimates: the supremum over grids, or divergence when the
/// estimates keep growing by at least [`DIVERGENCE_INCREMENT`] per doubling of `n`.
pub fn entropy_limit(family: &[CountSeries], method: Method) -> Result<EntropyEstimate, Error> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let method = if method == Method::Transfer { Method::Slope } else { method };
    let mut per_grid: Vec<GridEstimate> = family.iter().map(grid_estimate).collect();
    per_grid.sort_by_key(|g| g.n);
    let divergent = is_divergent(&per_grid, method);
    let value = if divergent {
        f64::INFINITY
    } else {
        per_grid.iter().map(|g| g.value(method)).fold(0.0, f64::max)
    };
    let empty = family.iter().all(|s| s.entries.iter().all(|e| e.upper == 0u32.into()));
    Ok(EntropyEstimate {
        value,
        method,
        per_grid,
        divergent,
        empty,
        radius: None,
        m_max: family.iter().map(CountSeries::m_max).max().unwrap_or(0),
    })
}

/// Growth per doubling between consecutive grids whose sizes differ by a factor of 2.
pub fn doubling_increments(per_grid: &[GridEstimate], method: Method) -> Vec<f64> {
    per_grid
        .windows(2)
        .filter(|w| w[1].n == 2 * w[0].n)
        .map(|w| w[1].value(method) - w[0].value(method))
        .collect()
}

fn is_divergent(per_grid: &[GridEstimate], method: Method) -> bool {
    let inc = doubling_increments(per_grid, method);
    !inc.is_empty() && inc.iter().all(|&d| d >= DIVERGENCE_INCREMENT)
}

/// Series for `n = 2^lo .. 2^hi` and their combined estimate.
pub fn entropy_dyadic(
    g: &Relation,
    log2_min: u32,
    log2_max: u32,
    m_max: usize,
    budget: usize,
    method: Method,
) -> Result<(EntropyEstimate, Vec<CountSeries>), Error> {
    let mut family = Vec::new();
    for e in log2_min..=log2_max {
        let grid = GridSpec::partition(1 << e)?;
        family.push(count_series(g, &grid, m_max, budget)?);
    }
    Ok((entropy_limit(&family, method)?, family))
}

/// `(ent(⋆^k G), k · ent(G))`, both from transition graphs.
pub fn k_power_entropy(g: &Relation, k: usize) -> Result<(EntropyEstimate, EntropyEstimate), Error> {
    let base = entropy_transfer(g)?;
    let power = star_power(g, k)?.to_relation();
    let direct = entropy_transfer(&power)?;
    let mut scaled = base.clone();
    scaled.value *= k as f64;
    Ok((direct, scaled))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DimensionEstimate {
    /// `None` when the fit residual exceeds [`DIMENSION_RESIDUAL_LIMIT`].
    pub value: Option<f64>,
    pub slope: f64,
    pub residual: f64,
    /// `(n, ln count)` pairs used in the fit.
    pub points: Vec<(usize, f64)>,
    pub m: usize,
}

/// Box-counting dimension of `⋆^m G` from counts on the grids `ns`.
pub fn box_dimension(g: &Relation, m: usize, ns: &[usize], budget: usize) -> Result<DimensionEstimate, Error> {
    if m < 1 {
        return Err(Error::InvalidDepth(m));
    }
    if ns.len() < 2 {
        return Err(Error::InvalidInput("dimension needs at least two grids"));
    }
    let mut points = Vec::new();
    for &n in ns {
        let s = count_series(g, &GridSpec::partition(n)?, m, budget)?;
        points.push((n, ln_biguint(&s.entry(m).lower)));
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| libm::log(n as f64)).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, y)| y).collect();
    let (slope, residual) = least_squares(&xs, &ys);
    Ok(DimensionEstimate {
        value: (residual <= DIMENSION_RESIDUAL_LIMIT).then_some(slope),
        slope,
        residual,
        points,
        m,
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
    fn transfer_examples() {
        let corners = ints(&[(0, 0), (0, 1), (1, 0), (1, 1)]);
        assert!((entropy_transfer(&corners).unwrap().value - LN_2).abs() < 1e-12);
        let core = ints(&[(0, 0), (1, 0), (0, 1)]);
        let phi = (1.0 + libm::sqrt(5.0)) / 2.0;
        assert!((entropy_transfer(&core).unwrap().value - libm::log(phi)).abs() < 1e-12);
        let e = entropy_transfer(&ints(&[(0, 1)])).unwrap();
        assert!(e.empty && e.value == 0.0);
    }

    #[test]
    fn power_law() {
        let corners = ints(&[(0, 0), (0, 1), (1, 0), (1, 1)]);
        let (a, b) = k_power_entropy(&corners, 2).unwrap();
        assert!((a.value - 2.0 * LN_2).abs() < 1e-12);
        assert!((a.value - b.value).abs() < 1e-12);
    }

    #[test]
    fn least_squares_line() {
        let (s, r) = least_squares(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]);
        assert!((s - 2.0).abs() < 1e-12 && r < 1e-12);
    }
}
