//! Tolerances shared by `paper-suite` and the acceptance tests.

use std::f64::consts::LN_2;

/// Relative tolerance for spectral entropies and the power and inverse laws.
pub const TRANSFER_REL: f64 = 1e-9;

/// `ln((1 + sqrt 5) / 2)`
pub const LN_PHI: f64 = 0.481_211_825_059_603_4;

/// Slope estimate of the Maribor segments against `ln φ`.
pub const MARIBOR_SLOPE: f64 = 0.03;
pub const MARIBOR_DEPTH: usize = 24;

/// Triangle on 4 cells at depth 200: bound on `inf a_m / m`.
pub const TRIANGLE_FEKETE_MAX: f64 = 0.08;
pub const TRIANGLE_DEPTH: usize = 200;
pub const TRIANGLE_MONOTONE_WINDOW: usize = 50;

/// Other zero-entropy fixtures at depth 100.
pub const ZERO_FEKETE_MAX: f64 = 0.10;
pub const ZERO_DEPTH: usize = 100;

/// Per-doubling growth for a family containing a full square.
pub const DIVERGENCE_FULL: f64 = LN_2 - 0.05;
/// Per-doubling growth for a family alternating between two full intervals.
pub const DIVERGENCE_HALF: f64 = 0.5 * LN_2 - 0.05;

/// Slope estimates of continuum relations with entropy `ln 2`, at 8 cells and depth 24.
pub const BRIDGE: f64 = 0.05;
pub const BRIDGE_CELLS: usize = 8;
pub const BRIDGE_DEPTH: usize = 24;

/// Horizontal lines against `ln k`.
pub const HORIZONTAL: f64 = 0.02;

/// Box dimension.
pub const DIMENSION: f64 = 0.05;
pub const DIMENSION_LOG2_MAX: u32 = 6;

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}
