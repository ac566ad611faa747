use thiserror::Error;

use crate::family::ElementSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("element {element} outside ground set [1, {n}]")]
    OutOfRange { element: u32, n: usize },

    #[error("arithmetic overflow computing {0}")]
    Overflow(String),

    #[error("{0} is not a member of the family")]
    NotAMember(ElementSet),

    #[error("witness {witness} is not a subset of {set}")]
    NotASubset { set: ElementSet, witness: ElementSet },

    #[error("family is not uniform: {set} has {size} elements, expected {expected}")]
    NotUniform {
        set: ElementSet,
        size: usize,
        expected: usize,
    },

    #[error("invalid witness assignment: {0}")]
    InvalidAssignment(String),

    /// A checked lemma property failed. Carries the offending sets so the
    /// failure can be replayed.
    #[error("{check} violated; counterexample: {}", format_sets(.counterexample))]
    LemmaViolation {
        check: &'static str,
        counterexample: Vec<ElementSet>,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("malformed input: {0}")]
    Format(String),
}

fn format_sets(sets: &[ElementSet]) -> String {
    let parts: Vec<String> = sets.iter().map(ToString::to_string).collect();
    parts.join(", ")
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
