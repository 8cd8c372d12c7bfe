use thiserror::Error;

/// Errors raised by the pipeline stages.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    /// The selection pool handed to `closest_ratio` was empty.
    #[error("cannot select an aspect ratio from an empty pool")]
    EmptyPool,
    /// No detailed grid fits under the tile budget.
    #[error("budget too small for detailed group (budget {budget})")]
    BudgetTooSmall {
        /// The requested tile budget.
        budget: u32,
    },
    /// Two inputs that must agree on a dimension do not.
    #[error("dimension mismatch: {what} (expected {expected}, found {found})")]
    DimensionMismatch {
        /// Which dimension disagreed.
        what: &'static str,
        /// Value required by the other operand.
        expected: usize,
        /// Value actually supplied.
        found: usize,
    },
}

/// Result alias used across the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
