//! Certified producers of (instance, proof) pairs.

mod breaksym;
mod clique;
mod php;

pub use breaksym::{emit_symmetry_breaking, parse_symmetries, BreakOptions, Symmetry};
pub use clique::{
    greedy_colouring, max_clique_brute_force, parse_dimacs, solve_clique_certified, vertex_dominates, CliqueRun, Graph,
};
pub use php::{pigeonhole, pigeonhole_symmetries};

/// Why a generator refused its input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("symmetry {index} is not a syntactic symmetry of the instance")]
    NotSymmetric { index: usize },
    #[error("{0}")]
    Invalid(String),
}
