//! Error type shared by all simulator operations.

use thiserror::Error;

/// Errors produced by simulator operations.
#[derive(Debug, Clone, Error)]
pub enum SimError {
    /// A precondition on the inputs was violated. The message names the
    /// violated invariant.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Post-selection on the no-jump trajectory has vanishing probability:
    /// the squared norm of the evolved state fell below 1e-24, so the
    /// conditional (renormalized) state is undefined.
    #[error("post-selection extinct: survival probability {survival:.3e} is below 1e-24")]
    PostSelectionExtinct { survival: f64 },

    /// A numerical routine (linear solve, eigendecomposition) failed.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

pub type SimResult<T> = Result<T, SimError>;

impl SimError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        SimError::InvalidArgument(msg.into())
    }
}
