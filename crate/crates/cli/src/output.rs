//! CSV, JSON and edge-list renderings of results.

use std::fmt::Write as _;

use mahavier_core::counting::CountSeries;
use mahavier_core::dynamics::DynamicsReport;
use mahavier_core::entropy::{DimensionEstimate, EntropyEstimate};
use mahavier_core::graph::TransitionGraph;
use mahavier_core::mahavier::ExplicitProduct;
use mahavier_core::Scalar;
use serde_json::{json, Value};

pub const COUNT_HEADER: &str =
    "m,count_lower,count_upper,a_m_lower,a_m_upper,a_m_over_m_upper,exact_flag,budget_flag";

fn float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.12}")
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

pub fn count_csv(series: &CountSeries) -> String {
    let mut out = String::from(COUNT_HEADER);
    out.push('\n');
    for e in &series.entries {
        let a_up = e.a_upper();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            e.m,
            e.lower,
            e.upper,
            float(e.a_lower()),
            float(a_up),
            float(a_up / e.m as f64),
            e.exact() as u8,
            e.budget as u8
        )
        .unwrap();
    }
    out
}

fn number(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::Null
    }
}

pub fn entropy_json(relation: &str, est: &EntropyEstimate) -> Value {
    let per_grid: Vec<Value> = est
        .per_grid
        .iter()
        .map(|g| {
            json!({
                "n": g.n,
                "fekete": number(g.fekete),
                "slope": number(g.slope),
                "residual": number(g.residual),
                "exact": g.exact,
                "budget": g.budget,
            })
        })
        .collect();
    json!({
        "relation": relation,
        "method": est.method.name(),
        "value_nats": number(est.value),
        "value_bits": number(est.value_bits()),
        "divergent": est.divergent,
        "empty": est.empty,
        "radius_bracket": est.radius.map(|(lo, hi)| json!([lo, hi])),
        "per_grid": per_grid,
        "m_max": est.m_max,
        "budget_flags": est.budget_flags(),
    })
}

pub fn dimension_json(relation: &str, d: &DimensionEstimate) -> Value {
    json!({
        "relation": relation,
        "depth": d.m,
        "dimension": d.value.map(number),
        "slope": number(d.slope),
        "residual": number(d.residual),
        "points": d.points.iter().map(|&(n, y)| json!({"n": n, "ln_count": number(y)})).collect::<Vec<_>>(),
    })
}

pub fn tuple_label(p: &[Scalar]) -> String {
    let parts: Vec<String> = p.iter().map(Scalar::to_literal).collect();
    format!("({})", parts.join(", "))
}

fn labels(points: &[Vec<Scalar>]) -> Vec<String> {
    points.iter().map(|p| tuple_label(p)).collect()
}

pub fn dynamics_json(relation: &str, r: &DynamicsReport, orbit: Option<(&[Scalar], bool)>) -> Value {
    let periodic: serde_json::Map<String, Value> = r
        .periodic_counts
        .iter()
        .map(|(p, c)| (p.to_string(), Value::String(c.to_string())))
        .collect();
    json!({
        "relation": relation,
        "node_count": r.node_count,
        "strongly_connected": r.strongly_connected,
        "periodic_counts": periodic,
        "recurrent_nodes": labels(&r.recurrent_nodes),
        "kernel_nodes": labels(&r.kernel_nodes),
        "dense_periodic": r.dense_periodic,
        "devaney": r.devaney,
        "criterion": "digraph",
        "orbit": orbit.map(|(c, dead)| json!({
            "coords": c.iter().map(Scalar::to_literal).collect::<Vec<_>>(),
            "dead_end": dead,
        })),
    })
}

/// One `p -> q` line per edge.
pub fn edge_list(g: &TransitionGraph) -> String {
    let mut out = String::new();
    for v in 0..g.len() {
        for &w in g.successors(v) {
            writeln!(out, "{} -> {}", tuple_label(g.node(v)), tuple_label(g.node(w))).unwrap();
        }
    }
    out
}

pub fn product_csv(p: &ExplicitProduct) -> String {
    let header: Vec<String> = (0..p.arity()).map(|i| format!("x{i}")).collect();
    let mut out = header.join(",");
    out.push('\n');
    for t in p.tuples() {
        let row: Vec<String> = t.iter().map(Scalar::to_literal).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}
