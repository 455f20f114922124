use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A product of two group elements fell outside the element set.
    #[error("group closure violated: {left} * {right} is not a group element")]
    ClosureViolation { left: char, right: char },

    #[error("spinor equations for {label} have residual {residual:e}")]
    InconsistentSpinor { label: char, residual: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    /// Two independent computations of the same quantity disagree.
    #[error("check failed: {0}")]
    Check(String),
}

pub type Result<T> = std::result::Result<T, Error>;
