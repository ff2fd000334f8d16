use thiserror::Error;

/// Errors raised by constructors and exact operations. Identity failures are
/// never errors: they are reported in the corresponding report structs.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum TwError {
    #[error("degenerate substitution: u -> a*u + b needs a != 0")]
    DegenerateSubstitution,
    #[error("not a power series in 1/u: numerator degree exceeds denominator degree")]
    NotPowerSeries,
    #[error("normalization: {0}")]
    Normalization(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("relation failure: {0}")]
    Relation(String),
    #[error("hypothesis failure: {0}")]
    Hypothesis(String),
    #[error("parse error: {0}")]
    Parse(String),
}
