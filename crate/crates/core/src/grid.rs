//! Interval covers of `[0,1]` and the product grids they induce.

use alloc::vec::Vec;

use crate::error::Error;
use crate::interval::Interval;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GridMode {
    /// Half-open cells `[(i-1)/n, i/n)`, the last one closed at 1.
    Partition,
    /// Open cells `((i-1)/n - eps, i/n + eps)` clipped to `[0,1]`.
    Overlap,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridSpec {
    n: usize,
    mode: GridMode,
    eps: Scalar,
    cells: Vec<Interval>,
}

impl GridSpec {
    pub fn partition(n: usize) -> Result<GridSpec, Error> {
        GridSpec::new(n, GridMode::Partition, Scalar::zero())
    }

    pub fn overlap(n: usize, eps: Scalar) -> Result<GridSpec, Error> {
        GridSpec::new(n, GridMode::Overlap, eps)
    }

    /// Overlap grid with `eps = 1/(32n)`.
    pub fn overlap_default(n: usize) -> Result<GridSpec, Error> {
        GridSpec::overlap(n, Scalar::new(1, 32 * n.max(1) as i64))
    }

    pub fn new(n: usize, mode: GridMode, eps: Scalar) -> Result<GridSpec, Error> {
        if n < 1 {
            return Err(Error::InvalidInput("a grid needs at least one cell"));
        }
        let nn = n as i64;
        let cells = match mode {
            GridMode::Partition => (0..nn)
                .map(|i| {
                    let lo = Scalar::new(i, nn);
                    let hi = Scalar::new(i + 1, nn);
                    if i + 1 == nn {
                        Interval::closed(lo, hi)
                    } else {
                        Interval::closed_open(lo, hi)
                    }
                })
                .collect(),
            GridMode::Overlap => {
                if !eps.is_positive() || eps >= Scalar::new(1, 16 * nn) {
                    return Err(Error::InvalidInput("overlap eps must lie in (0, 1/(16n))"));
                }
                (0..nn)
                    .map(|i| {
                        let lo = Scalar::new(i, nn) - &eps;
                        let hi = Scalar::new(i + 1, nn) + &eps;
                        // clipping to [0,1] closes the two outer ends
                        Interval::new(
                            lo.clone().max(Scalar::zero()),
                            hi.clone().min(Scalar::one()),
                            lo.is_negative(),
                            hi > Scalar::one(),
                        )
                    })
                    .collect()
            }
        };
        Ok(GridSpec { n, mode, eps, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> GridMode {
        self.mode
    }

    pub fn eps(&self) -> &Scalar {
        &self.eps
    }

    /// Cell `i`, counted from 0.
    pub fn cell(&self, i: usize) -> &Interval {
        &self.cells[i]
    }

    pub fn cells(&self) -> &[Interval] {
        &self.cells
    }

    /// Indices of all cells containing `x`.
    pub fn cells_containing(&self, x: &Scalar) -> Vec<usize> {
        (0..self.n).filter(|&i| self.cells[i].contains(x)).collect()
    }

    /// The unique partition cell containing `x` (Partition mode).
    pub fn locate(&self, x: &Scalar) -> Option<usize> {
        self.cells_containing(x).first().copied()
    }
}
