use std::fmt;

use thiserror::Error;

/// A single problem found by circuit validation, anchored to the
/// zero-based position of the offending instruction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub position: usize,
    pub message: String,
}

impl Violation {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        Violation {
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "instruction {}: {}", self.position, self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// An argument was outside the operation's domain (bad index, key
    /// length mismatch, probability outside [0, 1], ...).
    #[error("{0}")]
    Domain(String),

    /// The request exceeds a hard engine or oracle size cap.
    #[error("{0}")]
    Capacity(String),

    /// The instruction cannot be handled in this context (measurement in
    /// a dense unitary, injected operator in QASM output, ...).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The circuit failed validation; all violations are listed.
    #[error("invalid circuit: {}", list(.0))]
    InvalidCircuit(Vec<Violation>),

    /// The noise-fitting routine could not bracket or reach the target.
    #[error("fit failed: {0}")]
    FitFailure(String),
}

fn list(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(Violation::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn capacity(msg: impl Into<String>) -> Error {
    Error::Capacity(msg.into())
}
