use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("size limit exceeded: {0}")]
    Size(String),

    /// The input lies outside the domain of the operation (e.g. a matrix that
    /// is not positive definite, or a point that is not in the model).
    #[error("domain error: {0}")]
    Domain(String),

    /// A path enumeration hit its cap. Distinct from "no paths".
    #[error("path enumeration exceeded cap of {cap} paths between {from} and {to}")]
    PathCap { cap: usize, from: usize, to: usize },

    /// The operation is only defined under a hypothesis the input fails.
    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// An iterative solver stopped without meeting its tolerance.
    #[error("no convergence: best residual {best_residual:e}")]
    NoConvergence { best_residual: f64 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: msg.into(),
        }
    }
}
