use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("K(m) diverges at m = 1")]
    Divergence,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("degenerate output: {0}")]
    DegenerateOutput(String),

    #[error("numerical failure at x = {location}: {reason}")]
    Numerical { location: f64, reason: String },

    #[error("suspected missed band edge between E = {lower} and E = {upper}: {reason}")]
    MissedEdge { lower: f64, upper: f64, reason: String },

    #[error("structural mismatch: {0}")]
    StructuralMismatch(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerical(location: f64, reason: impl Into<String>) -> Self {
        Error::Numerical { location, reason: reason.into() }
    }
}
