use thiserror::Error;

use crate::convexify::MinkowskiSolution;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input spans fewer dimensions than the operation needs.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Data violates an operation's precondition (Minkowski conditions, parity, ranges).
    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("containment violated: {0}")]
    Containment(String),

    /// The Minkowski solver hit its iteration cap; carries the best iterate.
    #[error("solver did not converge after {} iterations (residual {:.3e})", .0.iterations, .0.residual)]
    NotConverged(Box<MinkowskiSolution>),

    #[error("linear program failed: {0}")]
    Lp(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
