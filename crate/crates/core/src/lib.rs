//! Dynamic programming over nice path decompositions.
//!
//! A [`engine::Problem`] describes per-bag states and how introduce/forget
//! events transform them; [`engine::run_dp`] fills one table per
//! decomposition node and [`engine::reconstruct_solution`] recovers an
//! optimal solution. The [`plugins`] module holds the bundled problems and
//! [`oracle`] brute-force references for small instances.

pub mod certificate;
pub mod checker;
pub mod decomposition;
pub mod engine;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod plugins;

pub use certificate::{Certificate, Placement, Score, Sense};
pub use decomposition::{NicePathDecomposition, PathDecomposition};
pub use graph::{Graph, PartialGrid};
pub use plugins::{solve, DecompositionSource, Instance, ProblemSpec, Solution, SolveError, SolveOptions};
