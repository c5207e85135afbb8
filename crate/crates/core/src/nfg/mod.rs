//! Normal factor graphs: validation, normalization, evaluation, fragments, and duality.

mod contract;
mod duality;
mod graph;

pub use contract::{PartitionFunction, DEFAULT_EVAL_CAP};
pub use duality::DualityReport;
pub use graph::{equality, Factor, NormalFactorGraph, Realization, Variable};
