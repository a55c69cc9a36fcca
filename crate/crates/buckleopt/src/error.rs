use thiserror::Error;

/// Error type shared by all modules.
#[derive(Error, Debug, Clone)]
pub enum Error {
    /// A domain description violates its invariants.
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    /// A geometric operation collapsed to measure zero (e.g. collinear hull).
    #[error("degenerate domain: {0}")]
    DegenerateDomain(String),

    /// An argument is outside its documented range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Rasterization produced no interior unknowns.
    #[error("resolution too coarse: {0}")]
    ResolutionTooCoarse(String),

    /// The eigensolver did not reach the requested tolerance.
    #[error("solver failure: {message}; best residuals {residuals:?}")]
    SolverFailure {
        message: String,
        residuals: Vec<f64>,
    },
}
