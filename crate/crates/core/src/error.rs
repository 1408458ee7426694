use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("pole: denominator {modulus:e} below threshold while evaluating {context}")]
    Pole { context: &'static str, modulus: f64 },

    #[error("degenerate denominator in {context}: |1 - |p|^2| = {value:e}")]
    DegenerateDenominator { context: &'static str, value: f64 },

    #[error("point outside the domain of {context}: {detail}")]
    Domain { context: &'static str, detail: String },

    #[error("field evaluation failed at {at}: {detail}")]
    EvaluationFailure { at: Complex64, detail: String },

    #[error("membership criteria disagree beyond the tolerance band: {detail}")]
    Inconsistency { detail: String },

    #[error("lift to the operator ball failed: best norm {best_norm} (target < {target})")]
    LiftFailure { best_norm: f64, target: f64 },

    #[error("no separating hyperplane certified: {detail}")]
    WitnessNotFound { detail: String },

    #[error("witness violated by sample #{index} {sample:?}: {detail}")]
    WitnessViolation {
        index: usize,
        sample: [f64; 6],
        detail: String,
    },

    #[error("degenerate gradient: |grad r| = {norm:e}")]
    DegenerateGradient { norm: f64 },

    #[error("boundary classification mismatch: expected {expected}, found {found}")]
    Classification { expected: String, found: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("sampler exhausted: acceptance {accepted}/{drawn} below 0.1%")]
    Exhaustion { accepted: usize, drawn: usize },
}

pub type Result<T> = std::result::Result<T, GeomError>;
