use thiserror::Error;

use crate::Value;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CollatzError {
    /// A map application left the 128-bit range.
    #[error("arithmetic overflow during {op} of {value}")]
    Overflow { op: &'static str, value: Value },

    /// A trajectory did not reach 1 within the step cap. Either the cap
    /// is too small or the start value is a counterexample candidate.
    #[error("{start} did not reach 1 within {cap} steps")]
    StepCapExceeded { start: Value, cap: u64 },

    /// An operation was applied outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A vertex was generated twice during tree construction, which
    /// would witness a cycle in the inverse-map graph.
    #[error("duplicate vertex {vertex} at levels {first_level} and {second_level}")]
    DuplicateVertex {
        vertex: Value,
        first_level: usize,
        second_level: usize,
    },
}

pub type Result<T> = std::result::Result<T, CollatzError>;
