use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what}: size {actual} exceeds the configured cap {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("hypergraph contains an empty edge")]
    EmptyEdge,
    #[error("vertex {0} lies in no face and cannot be colored")]
    Uncolorable(usize),
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid structure: {0}")]
    Validation(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
}

impl Error {
    pub(crate) fn cap(what: &'static str, limit: usize, actual: usize) -> Self {
        Error::CapExceeded { what, limit, actual }
    }
}

/// Returns `CapExceeded` when `actual > limit`.
pub(crate) fn check_cap(what: &'static str, limit: usize, actual: usize) -> Result<()> {
    if actual > limit {
        Err(Error::cap(what, limit, actual))
    } else {
        Ok(())
    }
}
