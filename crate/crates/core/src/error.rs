use thiserror::Error;

/// Errors raised by the distribution, transform and functional routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed input: NaN/Inf values, mismatched lengths, bad masses.
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    /// Operation needs positive variance.
    #[error("degenerate distribution (variance {0:e})")]
    DegenerateDistribution(f64),

    #[error("scale factor must be nonzero")]
    ZeroScale,

    /// Operation needs a mean-zero law.
    #[error("input is not centered (mean {0:e})")]
    NonCenteredInput(f64),

    #[error("mixture component {index} is not centered (mean {mean:e})")]
    NonCenteredComponent { index: usize, mean: f64 },

    #[error("mixture has zero variance")]
    DegenerateMixture,

    #[error("argument outside its domain: {0}")]
    DomainError(String),

    #[error("input is not standardized (mean {mean:e}, variance {variance})")]
    NotStandardized { mean: f64, variance: f64 },

    #[error("distribution has an atom at zero")]
    AtomAtZero,

    #[error("support lies on one side of zero")]
    OneSidedSupport,

    #[error("expected {expected} support points, found {found}")]
    WrongSupportSize { expected: usize, found: usize },

    #[error("middle support point is zero")]
    ZeroMiddlePoint,

    #[error("support points violate the required ordering: {0}")]
    OrderingViolation(String),

    #[error("mixture reduction exceeded recursion depth {0}")]
    MixtureBlowup(usize),

    #[error("convolution support of {size} points exceeds the limit {limit}")]
    SupportBlowup { size: usize, limit: usize },

    #[error("search grid contains no admissible points")]
    EmptyGrid,

    /// A numerically checked inequality or identity failed.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
