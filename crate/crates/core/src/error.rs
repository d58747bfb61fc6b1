use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EllipticError {
    #[error("elliptic modulus k = {0} outside [0, 1)")]
    Modulus(f64),
    #[error("elliptic amplitude phi = {0} outside [-pi/2, pi/2]")]
    Amplitude(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("subdivision cap reached on [{lo}, {hi}]: estimate {estimate}, error {error}")]
    SubdivisionLimit {
        lo: f64,
        hi: f64,
        estimate: f64,
        error: f64,
    },
    #[error("integrand is not finite at x = {0}")]
    NonFinite(f64),
}

/// Failures of the parameter algebra and curve evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("(A, sigma) = ({a}, {sigma}) is outside 0 < A < 1, 0 < sigma < sqrt(1 - A^2)")]
    OutsideOmega0 { a: f64, sigma: f64 },
    #[error("{name} = {value} outside [{lo}, {hi}]")]
    AngleOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("invalid physical input: {0}")]
    Physical(String),
    #[error("mean curvature lambda = {0} is not negative")]
    NonNegativeCurvature(f64),
    #[error("a_ell radicand {0} is not positive")]
    NegativeRadicand(f64),
    #[error("contact angle not determined for this state")]
    ContactAngleUnset,
    #[error("need at least {need} samples, got {got}")]
    InsufficientSamples { need: usize, got: usize },
    #[error("intersection test unresolved after {0} refinements")]
    Resolution(usize),
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// Root-finding and continuation failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("z1(pi) = {z1_pi} > 0: no contact angle in (0, pi]")]
    Infeasible { z1_pi: f64 },
    #[error("no sign change found for A = {a} on the scan grid")]
    NotFound { a: f64 },
    #[error("root at (A, sigma) = ({a}, {sigma}) violates {failed:?}")]
    ConstraintViolation {
        a: f64,
        sigma: f64,
        failed: Vec<String>,
    },
    #[error("iteration limit reached; best bracket [{lo}, {hi}]")]
    IterationLimit { lo: f64, hi: f64 },
    #[error("continuation stalled below the step floor at A = {a}")]
    StepFloor { a: f64 },
    #[error("invalid solver options: {0}")]
    Options(String),
    #[error(transparent)]
    Steady(#[from] Error),
}

impl From<EllipticError> for SolveError {
    fn from(e: EllipticError) -> Self {
        SolveError::Steady(e.into())
    }
}

impl From<QuadratureError> for SolveError {
    fn from(e: QuadratureError) -> Self {
        SolveError::Steady(e.into())
    }
}
