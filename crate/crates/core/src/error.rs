use thiserror::Error;

/// Errors raised by the series algebra, the action-series engine and the
/// shooting solver.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("branch contour too close to a branch point: {0}")]
    ContourTooClose(String),

    #[error("invalid contour: {0}")]
    InvalidContour(String),

    #[error("integration path error: {0}")]
    Path(String),

    #[error("turning point on path near x = {0}")]
    TurningPointOnPath(String),

    #[error("{solver} did not converge after {iterations} iterations (last estimate {last})")]
    NonConvergence {
        solver: &'static str,
        iterations: usize,
        last: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
