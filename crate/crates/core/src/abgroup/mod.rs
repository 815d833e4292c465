//! Exact arithmetic for finitely generated abelian groups.

mod group;
mod lattice;
mod matrix;
mod snf;

pub use group::{
    format_combination, group_from_presentation, subquotient, CyclicSum, FgAbGroup, Hom,
    Subquotient,
};
pub use lattice::{image_basis, kernel_basis, preimage_basis, solve_in_lattice, LatticeSolver};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, Snf};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbGroupError {
    #[error("composite g∘f is nonzero")]
    CompositionNonzero,
    #[error("expected {expected} generator names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("not in invariant-factor form: {0}")]
    NotInvariantForm(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("boundary lattice is not contained in the cycle lattice")]
    BoundaryNotCycle,
}
