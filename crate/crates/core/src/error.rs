use thiserror::Error;

use crate::point::Point2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("degenerate model: {0}")]
    DegenerateModel(String),

    /// A numerical routine failed to converge. `best` carries the last
    /// iterate when one is meaningful.
    #[error("numerical failure: {message}")]
    Numerical {
        message: String,
        best: Option<Point2>,
    },

    /// The heuristic scan found no validated solution.
    #[error("no quarter median found by angle scan")]
    NotFound,

    /// An invariant that should hold by construction was violated.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn numerical(message: impl Into<String>) -> Self {
        Error::Numerical {
            message: message.into(),
            best: None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
