use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("window overflow: {what} needs radius {needed}, window holds {available}")]
    WindowOverflow {
        what: String,
        needed: usize,
        available: usize,
    },
    #[error("window too small: {what} requires N >= {required}, got {got}")]
    WindowTooSmall {
        what: String,
        required: usize,
        got: usize,
    },
    #[error("function nearly vanishes on the circle (min |f| = {min_modulus:e}); winding number undefined")]
    NearZeroSample { min_modulus: f64 },
    #[error("evaluation point {point} is within {distance:e} of a pole")]
    PoleProximity { point: String, distance: f64 },
    #[error("ambiguous zero clustering near {near}")]
    AmbiguousClustering { near: String },
    #[error("zero at {zero} lies within {distance:e} of the unit circle")]
    BoundaryZero { zero: String, distance: f64 },
    #[error("pole at {pole} lies on the unit circle")]
    CirclePole { pole: String },
    #[error("numerator and denominator share the root {root}")]
    CoprimalityViolation { root: String },
    #[error("symbol is not invertible on the boundary grid (min |phi| = {min_modulus:e})")]
    NonInvertibleSymbol { min_modulus: f64 },
    #[error("vector is not in the kernel (residual {residual:e} > {tolerance:e})")]
    NotInKernel { residual: f64, tolerance: f64 },
    #[error("hypothesis residual {residual:e} exceeds {tolerance:e}: {what}")]
    HypothesisResidual {
        what: String,
        residual: f64,
        tolerance: f64,
    },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("basis mismatch in composition: {0}")]
    CompositionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("linear algebra failure: {0}")]
    Numerical(String),
}

impl Error {
    /// True for errors that signal a violated numeric precondition (window
    /// sizes, symbol invertibility, boundary zeros) rather than malformed input.
    pub fn is_precondition(&self) -> bool {
        !matches!(self, Error::InvalidInput(_) | Error::CompositionMismatch(_))
    }
}
