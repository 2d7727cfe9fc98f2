//! Crate-wide error type.
//!
//! All fallible operations in this crate return [`Result`]. Invariant
//! violations that can only arise from bugs (for example a partition-counting
//! series producing a non-integer coefficient) panic instead; they are not
//! recoverable conditions a caller should handle.

use thiserror::Error;

/// Errors reported by series arithmetic, parsers, and verifiers.
#[derive(Debug, Error)]
pub enum Error {
    /// Two series of different truncation orders were combined. Orders are
    /// never silently coerced; re-truncate explicitly with
    /// [`TruncatedSeries::truncate`](crate::series::TruncatedSeries::truncate).
    #[error("truncation order mismatch: left operand has order {left}, right has order {right}")]
    OrderMismatch { left: usize, right: usize },

    /// Attempted to invert a series whose constant term is zero.
    #[error("series is not invertible: its constant term is zero")]
    NotInvertible,

    /// A parameter was outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A partition failed the capsid membership test required by the
    /// requested operation.
    #[error("partition {partition} is not an ({m},{r1},{r2})-capsid")]
    NotACapsid {
        m: u64,
        r1: u64,
        r2: u64,
        partition: String,
    },

    /// An evaluation would require a series order beyond the configured
    /// budget. The computation is refused rather than silently truncated.
    #[error("required series order {required} exceeds the budget of {budget}")]
    OrderBudget { required: usize, budget: usize },

    /// Malformed textual input (partition notation, rational literal, or a
    /// serialized series).
    #[error("parse error: {0}")]
    Parse(String),

    /// A `verify_*` function found a counterexample to the claim it checks.
    /// Carries a description of the first mismatch.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
