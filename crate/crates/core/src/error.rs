use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every module.
///
/// The variants fall into three families that the command line maps onto
/// distinct exit codes: invalid input, unmet hypotheses, and numerical
/// breakdown.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("series diverges: {0}")]
    Divergent(String),

    #[error("series did not converge within {terms} terms")]
    NoConvergence { terms: usize },

    #[error("pole of the Mellin integrand: {0}")]
    Pole(String),

    #[error("zero of the function on the contour at {re} + {im}i")]
    ZeroOnBoundary { re: f64, im: f64 },

    #[error("quadrature failure: {0}")]
    Quadrature(String),

    #[error("i/o error: {0}")]
    Io(String),
}

/// Coarse classification used for exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Hypothesis,
    Numerical,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Domain(_) | Error::InvalidParams(_) | Error::Io(_) => ErrorKind::Input,
            Error::Hypothesis(_) => ErrorKind::Hypothesis,
            Error::Divergent(_)
            | Error::NoConvergence { .. }
            | Error::Pole(_)
            | Error::ZeroOnBoundary { .. }
            | Error::Quadrature(_) => ErrorKind::Numerical,
        }
    }

    /// Short machine-readable tag for structured error output.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::InvalidParams(_) => "invalid_params",
            Error::Hypothesis(_) => "hypothesis",
            Error::Divergent(_) => "divergent",
            Error::NoConvergence { .. } => "no_convergence",
            Error::Pole(_) => "pole",
            Error::ZeroOnBoundary { .. } => "zero_on_boundary",
            Error::Quadrature(_) => "quadrature",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::InvalidParams(e.to_string())
    }
}
