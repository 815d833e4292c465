//! Spectral sequence mechanics: E₂ from coefficients, generator
//! differentials extended by the Leibniz rule, page turning and stems.

mod differential;
mod endo;
mod family;
mod leibniz;
mod matching;
mod page;
mod run;
mod solve;
mod window;

pub use differential::{turn_page, DiffEntry, PageDifferential, Provenance, SlotValue};
pub use endo::{run_to_einfty, solve_all_pages, EndoRun, NoDifferentials, SpectralInput};
pub use family::CoefficientFamily;
pub use leibniz::{
    coordinates_on_basis, d_monomial, d_polynomial, leibniz_lift, ring_cell, GeneratorDiffs,
};
pub use matching::{match_presentation, BidegreeMatch, MatchReport};
pub use page::{build_e2, build_e2_padded, relabel_with_ring, stem_assoc_graded, Cell, Page};
pub use run::{
    check_abutment, run_pages, AbutmentVerdict, DifferentialSource, LateSlot, LeibnizSource,
    Overrides, SpectralSequenceRun, DEFAULT_MAX_PAGE,
};
pub use solve::{
    check_seed, consistency_violations, solve_generator_differentials, FREE_COEFFICIENT_BOUND,
};
pub use window::Window;

use thiserror::Error;

use crate::abgroup::AbGroupError;
use crate::gradedring::RingError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecSeqError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Group(#[from] AbGroupError),
    #[error("bad seed: {0}")]
    BadSeed(String),
    #[error("no assignment of generator differentials is consistent with the relations")]
    NoConsistentAssignment,
    #[error(
        "generator differentials for {generators:?} are not determined; candidates: {candidates:?}"
    )]
    AmbiguousAssignment {
        generators: Vec<String>,
        candidates: Vec<String>,
    },
    #[error("{0} candidate assignments exceed the search limit")]
    TooManyCandidates(usize),
    #[error("Leibniz extension is inconsistent: {0}")]
    LeibnizInconsistent(String),
    #[error("d_{r} is not well defined at (s,t) = ({s},{t}): {reason}")]
    NotWellDefined {
        r: usize,
        s: i64,
        t: i64,
        reason: String,
    },
    #[error("d_{r}∘d_{r} is nonzero starting at (s,t) = ({s},{t})")]
    SquareNonzero { r: usize, s: i64, t: i64 },
}
