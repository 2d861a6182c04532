use std::path::PathBuf;
use std::process::{Command, Output};

use mahavier::catalog::{concrete_names, fixture};
use mahavier::config::RelationConfig;
use mahavier_core::fixtures::GaReading;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mahavier"))
        .args(args)
        .env("MAHAVIER_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mahavier-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn every_fixture_round_trips_through_toml() {
    for reading in [GaReading::Figure, GaReading::Paper] {
        for name in concrete_names() {
            let (g, _) = fixture(&name, reading).unwrap();
            let text = RelationConfig::from_relation(&g, Some(&name)).to_toml();
            let cfg = RelationConfig::from_toml(&text).unwrap();
            assert_eq!(cfg.name.as_deref(), Some(name.as_str()));
            assert_eq!(cfg.to_relation().unwrap(), g, "{name}");
        }
    }
}

#[test]
fn entropy_of_four_corners() {
    let o = bin(&["entropy", "--fixture", "four-corners"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["method"], "transfer");
    assert!((v["value_nats"].as_f64().unwrap() - 0.693147180559945).abs() < 1e-12);
    assert!((v["value_bits"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn triangle_count_row() {
    let o = bin(&["count", "--fixture", "triangle", "--cells", "2", "--depth", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row = text.lines().nth(2).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(&fields[..3], &["2", "4", "4"]);
    assert_eq!(&fields[6..], &["1", "0"]);
}

#[test]
fn divergent_entropy_has_null_value() {
    let o = bin(&["entropy", "--fixture", "square", "--dyadic-max", "4", "--depth", "8"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["divergent"], true);
    assert!(v["value_nats"].is_null());
    assert_eq!(v["per_grid"].as_array().unwrap().len(), 4);
}

#[test]
fn relation_files_are_accepted() {
    let p = temp("core.toml", "kind = \"points\"\npoints = [[\"0\", \"0\"], [\"1\", \"0\"], [\"0\", \"1\"]]\n");
    let o = bin(&["entropy", "--relation", p.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["relation"], "core");
    assert!((v["value_nats"].as_f64().unwrap() - 0.4812118250596).abs() < 1e-12);
}

#[test]
fn config_errors_exit_2() {
    assert_eq!(bin(&["entropy", "--fixture", "no-such"]).status.code(), Some(2));
    assert_eq!(bin(&["count", "--fixture", "triangle", "--depth", "0"]).status.code(), Some(2));
    assert_eq!(bin(&["count", "--fixture", "triangle", "--budget", "10"]).status.code(), Some(2));
    assert_eq!(bin(&["count", "--fixture", "triangle", "--cells", "1"]).status.code(), Some(2));
    assert_eq!(bin(&["entropy", "--fixture", "triangle", "--method", "transfer"]).status.code(), Some(2));
    assert_eq!(bin(&["count"]).status.code(), Some(2));
    let bad = temp("bad.toml", "kind = \"region\"\nconstraints = [\"x0 +\"]\n");
    assert_eq!(bin(&["count", "--relation", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn budget_overrun_exits_3_with_brackets() {
    let p = temp(
        "skew.toml",
        r#"kind = "segments"
segments = [
  [["0", "0"], ["2/5", "1"]],
  [["2/5", "1"], ["1", "1/7"]],
  [["0", "0"], ["1", "2/5"]],
  [["1", "2/5"], ["1/7", "1"]],
]
"#,
    );
    let out = p.with_extension("csv");
    let o = bin(&[
        "count", "--relation", p.to_str().unwrap(), "--cells", "16", "--depth", "10", "--budget", "1000",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    let csv = std::fs::read_to_string(out).unwrap();
    let last: Vec<String> = csv.lines().last().unwrap().split(',').map(str::to_owned).collect();
    assert_eq!(last[7], "1");
    let lower: u128 = last[1].parse().unwrap();
    let upper: u128 = last[2].parse().unwrap();
    assert!(lower < upper);
}

#[test]
fn dynamics_outputs() {
    let edges = temp("edges.txt", "");
    let o = bin(&["dynamics", "--fixture", "four-corners", "--depth", "2", "--edges", edges.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["strongly_connected"], true);
    assert_eq!(v["devaney"], true);
    assert_eq!(v["periodic_counts"]["1"], "2");
    assert_eq!(v["periodic_counts"]["2"], "4");
    let text = std::fs::read_to_string(edges).unwrap();
    assert_eq!(text.lines().count(), 8);
    assert!(text.contains("(0, 1) -> (1, 0)"));

    let seeded = |seed: &str| stdout(&bin(&["dynamics", "--fixture", "g-a-3", "--seed", seed, "--orbit-length", "30"]));
    assert_eq!(seeded("42"), seeded("42"));
    assert_ne!(seeded("42"), seeded("43"));
}

#[test]
fn product_and_dimension() {
    let o = bin(&["product", "--fixture", "maribor-core", "--k", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("x0,x1,x2,x3"));
    assert_eq!(text.lines().count(), 1 + 8);

    let o = bin(&["dimension", "--fixture", "square", "--dyadic-max", "5"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["dimension"].as_f64().unwrap() - 2.0).abs() < 1e-9);
}

#[test]
fn catalog_listing() {
    let text = stdout(&bin(&["list-fixtures"]));
    for name in ["maribor-core", "tent-inverse", "kt-diamond", "empty-rect", "g-a-<a>"] {
        assert!(text.contains(name), "{name}");
    }
    assert!(text.lines().any(|l| l.starts_with("maribor-core") && l.contains("ln φ")));
    assert!(text.lines().any(|l| l.starts_with("tent-inverse") && l.contains("ln 2")));
}

#[test]
fn paper_suite_passes() {
    let o = bin(&["paper-suite"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    let fixtures: std::collections::BTreeSet<&str> =
        text.lines().skip(1).filter_map(|l| l.split_whitespace().next()).collect();
    assert!(fixtures.len() >= 16);
}
