//! Built-in fixtures by name.
//!
//! Parametric fixtures carry their parameter in the name: `g-3`, `g-a-4`, `l-8`,
//! `k-horizontal-lines-3`, `triangle-plus-point:1/4,3/4`.

use std::f64::consts::LN_2;

use mahavier_core::fixtures::{self, GaReading};
use mahavier_core::scalar::q;
use mahavier_core::Relation;

use crate::parse::parse_scalar;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Expected {
    /// Entropy equal to the value.
    Value(f64),
    /// Entropy at least the value.
    AtLeast(f64),
    Zero,
    Infinite,
    /// The infinite product is empty.
    Empty,
}

impl Expected {
    pub fn describe(&self) -> String {
        match self {
            Expected::Value(v) => format!("{v:.6}"),
            Expected::AtLeast(v) => format!(">= {v:.6}"),
            Expected::Zero => "0".into(),
            Expected::Infinite => "inf".into(),
            Expected::Empty => "empty".into(),
        }
    }
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub kind: &'static str,
    pub expected: &'static str,
}

pub fn catalog() -> Vec<CatalogEntry> {
    let e = |name, kind, expected| CatalogEntry { name, kind, expected };
    vec![
        e("four-corners", "points", "ln 2"),
        e("g-<n>", "points", "ln n"),
        e("triangle", "region", "0"),
        e("triangle-plus-point[:p,q]", "union", "inf (p=1/4, q=3/4 by default)"),
        e("maribor-segments", "segments", "ln φ"),
        e("maribor-core", "points", "ln φ"),
        e("g-a-<a>", "points", "ln((1+sqrt(1+4c))/2), c = a (figure) or a-1 (paper)"),
        e("ingram-2.2", "segments", "0"),
        e("ingram-2.3", "segments", "inf"),
        e("ingram-2.14", "segments", "0"),
        e("bl", "segments", "0"),
        e("parabola", "region", "0"),
        e("diagonal", "segments", "0"),
        e("diagonal-plus-two-points", "union", "ln 2"),
        e("l-<n>", "points", ">= ln(n+1)/3"),
        e("k-horizontal-lines-<k>", "segments", "ln k"),
        e("tent-inverse", "segments", "ln 2"),
        e("kt-diamond", "segments", "ln 2"),
        e("square", "region", "inf"),
        e("empty-rect", "region", "empty"),
    ]
}

fn param(name: &str, prefix: &str) -> Option<Result<usize, CliError>> {
    let rest = name.strip_prefix(prefix)?;
    Some(
        rest.parse()
            .map_err(|_| CliError::Config(format!("bad parameter in fixture name {name:?}"))),
    )
}

/// Golden-ratio style root `ln((1 + sqrt(1 + 4c)) / 2)`.
pub fn ln_root(c: usize) -> f64 {
    ((1.0 + (1.0 + 4.0 * c as f64).sqrt()) / 2.0).ln()
}

/// The relation and expected entropy of a named fixture.
pub fn fixture(name: &str, reading: GaReading) -> Result<(Relation, Expected), CliError> {
    let core = |r: Result<Relation, mahavier_core::Error>| r.map_err(CliError::from);
    let out = match name {
        "four-corners" => (fixtures::four_corners(), Expected::Value(LN_2)),
        "triangle" => (fixtures::triangle(), Expected::Zero),
        "maribor-segments" => (fixtures::maribor_segments(), Expected::Value(crate::tolerances::LN_PHI)),
        "maribor-core" => (fixtures::maribor_core(), Expected::Value(crate::tolerances::LN_PHI)),
        "ingram-2.2" => (fixtures::ingram_2_2(), Expected::Zero),
        "ingram-2.3" => (fixtures::ingram_2_3(), Expected::Infinite),
        "ingram-2.14" => (fixtures::ingram_2_14(), Expected::Zero),
        "bl" => (fixtures::bl(), Expected::Zero),
        "parabola" => (fixtures::parabola(), Expected::Zero),
        "diagonal" => (fixtures::diagonal(), Expected::Zero),
        "diagonal-plus-two-points" => (fixtures::diagonal_plus_two_points(), Expected::Value(LN_2)),
        "tent-inverse" => (fixtures::tent_inverse(), Expected::Value(LN_2)),
        "kt-diamond" => (fixtures::kt_diamond(), Expected::Value(LN_2)),
        "square" => (fixtures::square(), Expected::Infinite),
        "empty-rect" => (fixtures::empty_rect(), Expected::Empty),
        "triangle-plus-point" => (core(fixtures::triangle_plus_point(q(1, 4), q(3, 4)))?, Expected::Infinite),
        _ => {
            if let Some(rest) = name.strip_prefix("triangle-plus-point:") {
                let (p, qv) = rest
                    .split_once(',')
                    .ok_or_else(|| CliError::Config(format!("expected p,q in {name:?}")))?;
                let g = core(fixtures::triangle_plus_point(parse_scalar(p)?, parse_scalar(qv)?))?;
                (g, Expected::Infinite)
            } else if let Some(k) = param(name, "k-horizontal-lines-") {
                let k = k?;
                (core(fixtures::k_horizontal_lines(k))?, Expected::Value((k as f64).ln()))
            } else if let Some(a) = param(name, "g-a-") {
                let a = a?;
                let g = core(fixtures::g_a(a, reading))?;
                (g, Expected::Value(ln_root(reading.recurrence(a))))
            } else if let Some(n) = param(name, "g-") {
                let n = n?;
                (core(fixtures::g_n(n))?, Expected::Value((n as f64).ln()))
            } else if let Some(n) = param(name, "l-") {
                let n = n?;
                (core(fixtures::l_n(n))?, Expected::AtLeast(((n + 1) as f64).ln() / 3.0))
            } else {
                return Err(CliError::Config(format!(
                    "unknown fixture {name:?}; see list-fixtures"
                )));
            }
        }
    };
    Ok(out)
}

/// Concrete names covering every catalog entry, parametric ones at representative values.
pub fn concrete_names() -> Vec<String> {
    let mut out: Vec<String> = [
        "four-corners",
        "triangle",
        "triangle-plus-point",
        "maribor-segments",
        "maribor-core",
        "ingram-2.2",
        "ingram-2.3",
        "ingram-2.14",
        "bl",
        "parabola",
        "diagonal",
        "diagonal-plus-two-points",
        "tent-inverse",
        "kt-diamond",
        "square",
        "empty-rect",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    out.extend((2..=6).map(|n| format!("g-{n}")));
    out.extend((2..=6).map(|a| format!("g-a-{a}")));
    out.extend([1, 2, 4, 8].iter().map(|n| format!("l-{n}")));
    out.extend((2..=4).map(|k| format!("k-horizontal-lines-{k}")));
    out
}

pub fn parse_reading(text: &str) -> Result<GaReading, CliError> {
    match text {
        "figure" => Ok(GaReading::Figure),
        "paper" => Ok(GaReading::Paper),
        _ => Err(CliError::Config(format!("unknown g-a reading {text:?}"))),
    }
}
