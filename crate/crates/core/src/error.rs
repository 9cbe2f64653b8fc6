use thiserror::Error;

/// Errors for model construction, state transformations, and estimation.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Inputs fail a normalization or consistency precondition.
    #[error("validation error: {0}")]
    Validation(String),

    /// Two objects were built for different system sizes.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The requested measurement outcome has vanishing probability.
    #[error("outcome two_m={two_m} is impossible (probability below 1e-300)")]
    OutcomeImpossible { two_m: i32 },

    /// A computed quantity violates its exact bounds by more than roundoff.
    #[error("numerical consistency violation: {0}")]
    NumericalConsistency(String),

    /// A brute-force oracle was asked for an infeasibly large system.
    #[error("cost guard: {0}")]
    CostGuard(String),

    /// The inversion problem carries no usable information.
    #[error("ill-conditioned estimate: {0}")]
    IllConditioned(String),
}

pub type Result<T> = std::result::Result<T, Error>;
