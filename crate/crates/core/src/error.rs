use thiserror::Error;

use crate::graph6::Graph6Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6: {0}")]
    Graph6(#[from] Graph6Error),

    #[error("order {order} exceeds the 64-vertex capacity")]
    Capacity { order: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("power iteration did not converge after {iterations} iterations (best estimate {estimate}, residual {residual:e})")]
    NoConvergence { iterations: usize, estimate: f64, residual: f64 },

    #[error("engines disagree on {graph6}: brute {brute}, recursive {recursive}")]
    EngineMismatch { graph6: String, brute: String, recursive: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
