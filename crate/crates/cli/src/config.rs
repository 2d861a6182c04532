//! TOML relation files.
//!
//! ```toml
//! name = "maribor-core"
//! kind = "points"
//! arity = 2
//! points = [["0", "0"], ["1", "0"], ["0", "1"]]
//! ```
//!
//! Segments are `[[x0, y0], [x1, y1]]`, regions list `constraints = ["x1 - x0 <= 0"]`,
//! and unions nest further relations under `[[members]]`.

use std::path::Path;

use mahavier_core::relation::Body;
use mahavier_core::{Relation, Scalar, Segment};
use serde::{Deserialize, Serialize};

use crate::parse::{format_constraint, parse_constraint, parse_scalar};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Points,
    Segments,
    Region,
    Union,
}

/// A coordinate written as a string literal or a bare integer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Text(String),
}

impl Literal {
    fn value(&self) -> Result<Scalar, CliError> {
        match self {
            Literal::Int(v) => Ok(Scalar::from_int(*v)),
            Literal::Text(s) => parse_scalar(s),
        }
    }
}

fn default_arity() -> usize {
    2
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: Kind,
    #[serde(default = "default_arity")]
    pub arity: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<Vec<Literal>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub segments: Vec<[[Literal; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub members: Vec<RelationConfig>,
}

fn lit(s: &Scalar) -> Literal {
    Literal::Text(s.to_literal())
}

impl RelationConfig {
    pub fn from_relation(g: &Relation, name: Option<&str>) -> RelationConfig {
        let mut cfg = RelationConfig {
            name: name.map(str::to_owned),
            kind: Kind::Points,
            arity: g.arity(),
            points: Vec::new(),
            segments: Vec::new(),
            constraints: Vec::new(),
            members: Vec::new(),
        };
        match g.body() {
            Body::Points(p) => {
                cfg.points = p.points().iter().map(|x| x.iter().map(lit).collect()).collect();
            }
            Body::Segments(s) => {
                cfg.kind = Kind::Segments;
                cfg.segments = s
                    .segments()
                    .iter()
                    .map(|seg| {
                        [
                            [lit(&seg.start[0]), lit(&seg.start[1])],
                            [lit(&seg.end[0]), lit(&seg.end[1])],
                        ]
                    })
                    .collect();
            }
            Body::Region(r) => {
                cfg.kind = Kind::Region;
                cfg.constraints = r.constraints().iter().map(format_constraint).collect();
            }
            Body::Union(members) => {
                cfg.kind = Kind::Union;
                cfg.members = members.iter().map(|m| RelationConfig::from_relation(m, None)).collect();
            }
        }
        cfg
    }

    pub fn to_relation(&self) -> Result<Relation, CliError> {
        let arity = self.arity;
        match self.kind {
            Kind::Points => {
                let pts = self
                    .points
                    .iter()
                    .map(|p| p.iter().map(Literal::value).collect::<Result<Vec<_>, _>>())
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Relation::points(arity, pts)?)
            }
            Kind::Segments => {
                if arity != 2 {
                    return Err(CliError::Config("segments need arity 2".into()));
                }
                let segs = self
                    .segments
                    .iter()
                    .map(|[a, b]| {
                        Ok(Segment::new(
                            [a[0].value()?, a[1].value()?],
                            [b[0].value()?, b[1].value()?],
                        )?)
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                Ok(Relation::segments(segs)?)
            }
            Kind::Region => {
                let polys = self
                    .constraints
                    .iter()
                    .map(|c| parse_constraint(c, arity))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Relation::region(arity, polys)?)
            }
            Kind::Union => {
                let members = self
                    .members
                    .iter()
                    .map(RelationConfig::to_relation)
                    .collect::<Result<Vec<_>, _>>()?;
                if members.iter().any(|m| m.arity() != arity) {
                    return Err(CliError::Config("union member arity differs".into()));
                }
                Ok(Relation::union(members)?)
            }
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn from_toml(text: &str) -> Result<RelationConfig, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("relation file: {e}")))
    }
}

pub fn load_relation(path: &Path) -> Result<(Relation, String), CliError> {
    let text = std::fs::read_to_string(path)?;
    let cfg = RelationConfig::from_toml(&text)?;
    let name = cfg
        .name
        .clone()
        .unwrap_or_else(|| path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default());
    Ok((cfg.to_relation()?, name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_handwritten_file() {
        let text = r#"
name = "mixed"
kind = "union"

[[members]]
kind = "region"
constraints = ["x1 <= x0"]

[[members]]
kind = "points"
points = [["1/4", "0.75"], [0, 1]]
"#;
        let cfg = RelationConfig::from_toml(text).unwrap();
        let g = cfg.to_relation().unwrap();
        assert_eq!(g.arity(), 2);
        let back = RelationConfig::from_toml(&RelationConfig::from_relation(&g, Some("mixed")).to_toml())
            .unwrap()
            .to_relation()
            .unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RelationConfig::from_toml("kind = \"points\"\npoints = [[\"2\", \"0\"]]")
            .unwrap()
            .to_relation()
            .is_err());
        assert!(RelationConfig::from_toml("kind = \"cloud\"").is_err());
        assert!(RelationConfig::from_toml("kind = \"region\"\nconstraints = [\"x0 + 1\"]")
            .unwrap()
            .to_relation()
            .is_err());
    }
}
