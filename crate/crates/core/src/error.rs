use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// The requested check exists but is too expensive at this size.
    #[error("capability limit: {0}")]
    Capability(String),

    /// A documented hypothesis of the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// Elimination hit a pivot below tolerance. `pivot` is 1-based.
    #[error("matrix is singular to tolerance (pivot {pivot}, magnitude {magnitude:e})")]
    Singular { pivot: usize, magnitude: f64 },

    /// QR iteration hit its sweep cap. `block` is the 1-based active window.
    #[error("eigenvalue iteration did not converge after {sweeps} sweeps (active block {}..={})", block.0, block.1)]
    NoConvergence { sweeps: usize, block: (usize, usize) },

    #[error("symbol has a pole at s = {s}")]
    Pole { s: Complex64 },

    #[error("degenerate degree: deg R = {degree} but at least {required} is needed")]
    DegenerateDegree { degree: usize, required: usize },

    /// A closed form failed its own residual check.
    #[error("internal consistency check failed: {0}")]
    InternalConsistency(String),

    /// Generic numerical failure (refinement caps, non-finite intermediate values).
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
