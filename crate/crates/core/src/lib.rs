#![no_std]
extern crate alloc;

pub mod counting;
pub mod cover;
pub mod dynamics;
pub mod entropy;
pub mod error;
pub mod exec;
pub mod fixtures;
pub mod graph;
pub mod grid;
pub mod interval;
pub mod mahavier;
pub mod poly;
pub mod relation;
pub mod scalar;
pub mod spectral;

pub use error::Error;
pub use interval::{GridBox, Interval, IntervalSet};
pub use poly::Poly;
pub use relation::{Bracket, Feasibility, Relation, Segment};
pub use scalar::Scalar;
