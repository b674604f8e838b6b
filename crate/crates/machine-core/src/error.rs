//! Error types for table handling and machine execution.

use thiserror::Error;

/// A problem with a machine table: bad syntax or a violated table
/// invariant. Syntax problems carry the 1-based source line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid table: {msg}")]
    Invalid { msg: String },
}

impl TableError {
    pub fn syntax(line: usize, msg: impl Into<String>) -> Self {
        TableError::Syntax { line, msg: msg.into() }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        TableError::Invalid { msg: msg.into() }
    }
}

/// A problem during (forward or reverse) execution.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    /// The requested word length is below the table's declared minimum.
    #[error("word length {requested} is below the machine's minimum length {min}")]
    LengthUnsupported { min: usize, requested: usize },

    /// Deterministic dead end: no rule matches the current configuration.
    #[error("no rule applies at step {at_step}: state {state}, word {word}")]
    NoRuleApplies { at_step: u64, state: String, word: String },

    /// A rule moved the head off the tape (outside the marker cells).
    #[error("head out of bounds at step {at_step} in state {state}")]
    HeadOutOfBounds { at_step: u64, state: String },

    /// The machine cannot be run backwards.
    #[error("reverse execution unsupported: {reason}")]
    ReverseUnsupported { reason: String },

    /// Reverse execution found no rule that could have produced the
    /// current configuration.
    #[error("no inverse rule applies at step {at_step}: state {state}, word {word}")]
    NoInverseApplies { at_step: u64, state: String, word: String },

    /// A supplied configuration does not fit the machine.
    #[error("bad configuration: {msg}")]
    BadConfig { msg: String },
}
