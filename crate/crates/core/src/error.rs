use thiserror::Error;

/// Errors raised by the toolkit's fallible operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial must have at least one root")]
    EmptyPolynomial,
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("evaluation at root {index}")]
    EvaluationAtRoot { index: usize },
    #[error("root index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("root solve failed: residual {residual:e} exceeds {tolerance:e} for fiber value {fiber}")]
    RootSolveFailed { fiber: f64, residual: f64, tolerance: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no critical points for degree {0}")]
    NoCriticalPoints(usize),
    #[error("infeasible model: {available} candidates for {requested} points")]
    InfeasibleModel { available: usize, requested: usize },
    #[error("instance too large: {candidates} candidates, n = {n}")]
    InstanceTooLarge { candidates: usize, n: usize },
    #[error("multiple root at index {0}")]
    MultipleRoot(usize),
    #[error("io: {0}")]
    Io(String),
    #[error("json: {0}")]
    Json(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
