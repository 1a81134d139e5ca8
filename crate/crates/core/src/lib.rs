//! Exact solvers and instance builders for partitioning graphs into
//! generalized dominating sets, for the graph constructions that make those
//! partition counts add up under composition, and for the conveyor flow shop
//! switch-minimization problem.
//!
//! Everything here is built for desk-scale exact computation: each optimized
//! solver is paired with a brute-force oracle so that their agreement can be
//! checked exhaustively on small instances.

pub mod budget;
pub mod cfsp;
pub mod dimacs;
pub mod exact_set;
pub mod gen;
pub mod graph;
pub mod reductions;
pub mod sat;
pub mod srp;

pub use budget::{Budget, SolveOutcome};
pub use exact_set::ExactSet;
pub use graph::{DecoratedGraph, Graph, Partition};
pub use srp::SigmaRhoSpec;
