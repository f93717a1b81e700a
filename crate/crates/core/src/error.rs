use thiserror::Error;

/// Errors raised by the library. Every variant maps onto one CLI exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("supercritical coupling: Z*alpha = {z_alpha} exceeds the {model} bound {bound}")]
    Supercritical {
        model: &'static str,
        z_alpha: f64,
        bound: f64,
    },

    #[error("model error: {0}")]
    Model(String),

    #[error("range error: {0}")]
    Range(String),

    #[error("no bound state bracketed: {0}")]
    Bracket(String),

    #[error("solver did not converge after {iterations} iterations (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("grid error: {0}")]
    Grid(String),

    #[error("coverage error: boundary density {edge:e} exceeds {limit:e} of the peak")]
    Coverage { edge: f64, limit: f64 },

    #[error("critical charge is unbounded for an infinitely heavy nucleus")]
    Unbounded,
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures of an iterative numerical method rather than bad input.
    pub fn is_convergence(&self) -> bool {
        matches!(
            self,
            Error::Convergence { .. } | Error::Bracket(_) | Error::Coverage { .. } | Error::Grid(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
