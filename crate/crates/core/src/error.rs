use thiserror::Error;

/// Errors raised by the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by a series with zero constant term")]
    DivisionByZeroConstantTerm,
    #[error("inner series of a composition must vanish at the origin")]
    NonzeroInnerConstant,
    #[error("fractional power needs constant term 1")]
    NonUnitConstantTerm,
    #[error("coefficient index {needed} requested but only {available} available")]
    InsufficientOrder { needed: usize, available: usize },
    #[error("angle {0} rad has no exact unimodular representation (use float mode)")]
    InexactAngle(f64),
    #[error("leading structure mismatch for a_{n}: expected {expected}, found {found}")]
    StructureMismatch {
        n: usize,
        expected: String,
        found: String,
    },
    #[error("variable b_{index} is outside the polynomial ring b_0..b_{}", .bound.saturating_sub(1))]
    VariableOutOfBound { index: usize, bound: usize },
    #[error("|b_1| = {0} exceeds 1")]
    DilatationExceedsOne(f64),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("expected a sample of class {expected}, got {found}")]
    WrongClass {
        expected: &'static str,
        found: &'static str,
    },
    #[error("perturbation estimate {estimate} is not below the admissibility threshold {threshold}")]
    PerturbationTooLarge { estimate: f64, threshold: f64 },
    #[error("invalid perturbation: {0}")]
    InvalidPerturbation(String),
    #[error("origin is a critical point (f'(0) = 0)")]
    CriticalPointAtOrigin,
    #[error("grid too coarse or irregular for the stencil: {0}")]
    GridTooCoarse(String),
    #[error("metrics are sampled on different grids")]
    GridMismatch,
    #[error("invalid radial metric: {0}")]
    InvalidMetric(String),
    #[error("lemma hypothesis not met: {reason}")]
    HypothesisNotMet {
        reason: String,
        curvature_max_violation: f64,
        fit_residual: f64,
    },
    #[error("dilatation identities are only known for the two-coefficient and root families, not `{0}`")]
    UnsupportedFamily(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
