//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide error type.
///
/// `Parse`, `Domain`, `InvalidInput` and `Unsupported` describe rejected
/// inputs; `Numeric`, `NonConvergence` and `LossOfPrecision` describe a
/// computation that started but could not produce a trustworthy result.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Text input did not match the grammar. `offset` is a byte offset into
    /// the input string.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// Input is syntactically fine but outside the supported domain
    /// (negative order, empty denominator, t <= 0, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Structurally invalid argument (empty sequence, dimension mismatch).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Valid input that this implementation deliberately does not handle.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An iterative numeric procedure failed.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// A series did not converge within its term budget.
    #[error("series did not converge: {0}")]
    NonConvergence(String),

    /// Catastrophic cancellation detected; the result would be unreliable.
    #[error("loss of precision: {0}")]
    LossOfPrecision(String),
}

impl Error {
    /// True when the error concerns the input rather than the computation.
    /// The CLI maps input errors to exit code 2 and numeric failures to 3.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::Domain(_) | Error::InvalidInput(_) | Error::Unsupported(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
