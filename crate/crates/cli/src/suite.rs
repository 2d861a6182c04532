//! `paper-suite`: every built-in fixture against its expected entropy, plus the
//! closed-form box counts.

use mahavier_core::counting::{count_series, CountSeries, DEFAULT_BUDGET};
use mahavier_core::entropy::{doubling_increments, entropy_limit, entropy_transfer, grid_estimate, Method};
use mahavier_core::fixtures::{self, GaReading};
use mahavier_core::grid::GridSpec;
use mahavier_core::scalar::q;
use mahavier_core::Relation;
use num_bigint::BigUint;

use crate::catalog::{concrete_names, fixture, Expected};
use crate::tolerances::*;
use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteRow {
    pub fixture: String,
    pub check: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

fn row(fixture: &str, check: &str, expected: String, computed: String, pass: bool) -> SuiteRow {
    SuiteRow {
        fixture: fixture.into(),
        check: check.into(),
        expected,
        computed,
        pass,
    }
}

fn series(g: &Relation, n: usize, m: usize) -> Result<CountSeries, CliError> {
    Ok(count_series(g, &GridSpec::partition(n)?, m, DEFAULT_BUDGET)?)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Continuum tolerance for a slope estimate of a fixture with known entropy.
fn slope_tolerance(name: &str) -> f64 {
    if name == "maribor-segments" {
        MARIBOR_SLOPE
    } else if name.starts_with("k-horizontal-lines-") {
        HORIZONTAL
    } else {
        BRIDGE
    }
}

fn check_fixture(name: &str, g: &Relation, expected: Expected) -> Result<Vec<SuiteRow>, CliError> {
    let finite = g.as_points().is_some();
    let mut rows = Vec::new();
    match expected {
        Expected::Value(v) if finite => {
            let e = entropy_transfer(g)?.value;
            rows.push(row(name, "transfer", format!("{v:.9}"), format!("{e:.9}"), rel_close(e, v, TRANSFER_REL)));
        }
        Expected::AtLeast(v) if finite => {
            let e = entropy_transfer(g)?.value;
            rows.push(row(name, "transfer", format!(">= {v:.9}"), format!("{e:.9}"), e >= v * (1.0 - TRANSFER_REL)));
        }
        Expected::Value(v) => {
            let s = series(g, BRIDGE_CELLS, BRIDGE_DEPTH)?;
            let e = grid_estimate(&s).slope;
            let tol = slope_tolerance(name);
            rows.push(row(name, "slope n=8 m=24", format!("{v:.4} ± {tol}"), format!("{e:.4}"), (e - v).abs() <= tol));
        }
        Expected::AtLeast(_) => unreachable!("lower bounds are only stated for point sets"),
        Expected::Zero => {
            let (cells, depth, limit) = if name == "triangle" {
                (4, TRIANGLE_DEPTH, TRIANGLE_FEKETE_MAX)
            } else {
                (4, ZERO_DEPTH, ZERO_FEKETE_MAX)
            };
            let s = series(g, cells, depth)?;
            let e = grid_estimate(&s).fekete;
            let check = format!("inf a_m/m n={cells} m={depth}");
            rows.push(row(name, &check, format!("<= {limit}"), format!("{e:.4}"), e <= limit && s.exact()));
        }
        Expected::Infinite if name.starts_with("triangle-plus-point") => {
            // embedded copies of l-n certify ent >= ln(n+1)/3 for every n
            let (p, qv) = (q(1, 4), q(3, 4));
            let mut ok = true;
            let mut last = 0.0;
            for n in [1usize, 2, 4, 8, 16, 32, 64] {
                let l = fixtures::l_n_pq(n, p.clone(), qv.clone())?;
                let inside = l
                    .as_points()
                    .expect("finite")
                    .points()
                    .iter()
                    .all(|x| g.member(x).unwrap_or(false));
                let e = entropy_transfer(&l)?.value;
                ok &= inside && e >= ((n + 1) as f64).ln() / 3.0 * (1.0 - TRANSFER_REL);
                last = e;
            }
            rows.push(row(name, "embedded l-n bound n<=64", "unbounded".into(), format!(">= {last:.4}"), ok));
        }
        Expected::Infinite => {
            let mut family = Vec::new();
            for n in [2, 4, 8, 16] {
                family.push(series(g, n, 12)?);
            }
            let est = entropy_limit(&family, Method::Slope)?;
            let inc = doubling_increments(&est.per_grid, Method::Slope);
            let floor = if name == "square" { DIVERGENCE_FULL } else { DIVERGENCE_HALF };
            let min = inc.iter().cloned().fold(f64::INFINITY, f64::min);
            rows.push(row(
                name,
                "divergent n=2..16",
                format!("growth >= {floor:.4}"),
                format!("{min:.4}"),
                est.divergent && min >= floor,
            ));
        }
        Expected::Empty => {
            let s = series(g, 4, 2)?;
            let c = s.entry(2).upper.clone();
            rows.push(row(name, "count n=4 m=2", "0".into(), c.to_string(), c == BigUint::from(0u32)));
        }
    }
    Ok(rows)
}

fn exact_counts() -> Result<Vec<SuiteRow>, CliError> {
    let mut rows = Vec::new();
    for n in [2usize, 4, 8] {
        let s = series(&fixtures::triangle(), n, 64)?;
        let ok = (1..=64).all(|m| {
            let e = s.entry(m);
            e.exact() && e.upper == binomial((m + n) as u64, (n - 1) as u64)
        });
        rows.push(row("triangle", &format!("count n={n} m<=64"), "C(m+n,n-1)".into(), if ok { "match" } else { "differs" }.into(), ok));
    }
    for n in [2usize, 4] {
        let s = series(&fixtures::square(), n, 10)?;
        let ok = (1..=10).all(|m| s.entry(m).exact() && s.entry(m).upper == BigUint::from(n).pow(m as u32 + 1));
        rows.push(row("square", &format!("count n={n} m<=10"), "n^(m+1)".into(), if ok { "match" } else { "differs" }.into(), ok));
    }
    let s = series(&fixtures::diagonal_plus_two_points(), 8, 16)?;
    let ok = (1..=16).all(|m| s.entry(m).exact() && s.entry(m).upper == BigUint::from(8u32 + (2u32 << m) - 2));
    rows.push(row(
        "diagonal-plus-two-points",
        "count n=8 m<=16",
        "n+2^(m+1)-2".into(),
        if ok { "match" } else { "differs" }.into(),
        ok,
    ));
    Ok(rows)
}

pub fn run_suite(reading: GaReading) -> Result<Vec<SuiteRow>, CliError> {
    let mut rows = Vec::new();
    for name in concrete_names() {
        let (g, expected) = fixture(&name, reading)?;
        rows.extend(check_fixture(&name, &g, expected)?);
    }
    rows.extend(exact_counts()?);
    Ok(rows)
}

pub fn render(rows: &[SuiteRow]) -> String {
    let w0 = rows.iter().map(|r| r.fixture.len()).max().unwrap_or(7).max(7);
    let w1 = rows.iter().map(|r| r.check.len()).max().unwrap_or(5).max(5);
    let w2 = rows.iter().map(|r| r.expected.len()).max().unwrap_or(8).max(8);
    let w3 = rows.iter().map(|r| r.computed.len()).max().unwrap_or(8).max(8);
    let mut out = format!("{:w0$}  {:w1$}  {:w2$}  {:w3$}  result\n", "fixture", "check", "expected", "computed");
    for r in rows {
        out.push_str(&format!(
            "{:w0$}  {:w1$}  {:w2$}  {:w3$}  {}\n",
            r.fixture,
            r.check,
            r.expected,
            r.computed,
            if r.pass { "ok" } else { "MISMATCH" }
        ));
    }
    let failed = rows.iter().filter(|r| !r.pass).count();
    out.push_str(&format!("{} checks, {} mismatches\n", rows.len(), failed));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), BigUint::from(20u32));
        assert_eq!(binomial(10, 0), BigUint::from(1u32));
    }
}
