use thiserror::Error;

/// Failures raised anywhere in the pipeline.
///
/// The variants split into two families: problems with what the caller
/// asked for (`Input`, `Resource`, `Precondition`) and failed checks of the
/// computed geometry (`Invariant`, `Algorithm`, `Correspondence`). The CLI
/// maps the first family to exit code 1 and the second to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("algorithm failure: {0}")]
    Algorithm(String),
    #[error("correspondence check failed: {0}")]
    Correspondence(String),
}

impl Error {
    /// True for errors caused by the request rather than by a failed check.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Input(_) | Error::Resource(_) | Error::Precondition(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
