use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate distribution: squared norm is {0}")]
    DegenerateDistribution(f64),

    /// Fermion pair with (numerically) identical mode distributions: both the
    /// norm and the detection numerator vanish and no value is defined.
    #[error("indeterminate fermion state: mode overlap {beta} is within {epsilon} of 1")]
    IndeterminateState { beta: f64, epsilon: f64 },

    #[error("singular point: baseline probability {p0:e} is below {threshold:e}")]
    SingularPoint { p0: f64, threshold: f64 },

    #[error("quadrature budget exceeded: {required} node pairs requested, budget is {budget}")]
    BudgetExceeded { required: usize, budget: usize },

    #[error("degenerate density: total mass {0} on the sampling grid")]
    DegenerateDensity(f64),

    #[error("insufficient statistics: {0}")]
    InsufficientStatistics(String),

    #[error("detector bin too wide: density varies by {variation:.3} across it (limit {limit})")]
    BinTooWide { variation: f64, limit: f64 },

    #[error("could not parse state description: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
