//! Error taxonomy for the whole pipeline. Variants that decide CLI exit codes
//! (`NotRational`, `GenusBudget`) are kept distinct from plain numeric failures.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CurveError>;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("parse error: {0}")]
    Parse(String),

    /// The eliminating resultants of every generator pair vanished identically:
    /// the system has a positive-dimensional solution set.
    #[error("non-finite solution set")]
    NonFiniteSolutionSet,

    /// Cluster multiplicities sum past the genus budget of a degree-d curve.
    /// Signals clustering over-merge; callers treat it as a non-rational verdict.
    #[error("cluster multiplicities exceed genus budget (deficiency {0})")]
    GenusBudget(i64),

    #[error("not rational (deficiency {0})")]
    NotRational(i64),

    /// Adjoint conditions admit no curve of degree d-2 at all.
    #[error("system over-constrained")]
    OverConstrained,

    /// The simple-point divisor cut the adjoint system down to nothing.
    #[error("inconsistent divisor")]
    InconsistentDivisor,

    #[error("adjoint pencil dimension {0}, expected 2")]
    PencilDimension(usize),

    #[error("unexpected degree drop: infinity hypothesis violated")]
    DegreeDrop,

    #[error("nonlinear quotient")]
    NonlinearQuotient,

    #[error("base polynomial degree mismatch: got {got}, expected {expected}")]
    BaseDegreeMismatch { got: usize, expected: usize },

    /// The q/p content test kept failing after the bounded number of
    /// perturbation retries.
    #[error("content persists")]
    ContentPersists,

    #[error("degenerate parametrization")]
    DegenerateParametrization,

    #[error("could not separate the pencil from the curve at infinity")]
    InfinitySeparation,

    #[error("assumption violated: {0}")]
    Assumption(String),

    #[error("simple points: {0}")]
    SimplePoints(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("distance sampling: {0}")]
    Distance(String),

    #[error("curve generation: {0}")]
    Generation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
