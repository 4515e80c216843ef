use thiserror::Error;

/// Failures of the arithmetic layer.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum NumericError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("singular matrix")]
    SingularMatrix,
    #[error("exponential links cannot be evaluated in exact rational mode")]
    ExactModeUnsupported,
    #[error("precision of {0} bits is below the 64-bit minimum")]
    PrecisionTooLow(u32),
    #[error("mixed precision: expected {expected} bits, found {found}")]
    PrecisionMismatch { expected: u32, found: u32 },
}

/// A system that violates a structural invariant.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SystemError {
    #[error("polynomial {index} has {found} variables, expected {expected}")]
    VariableCount {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("link {index}: source variable {src} is outside 1..={n}")]
    LinkSource { index: usize, src: usize, n: usize },
    #[error("link {index}: target variable {dst} is outside {lo}..={hi}")]
    LinkTarget {
        index: usize,
        dst: usize,
        lo: usize,
        hi: usize,
    },
    #[error("variable {dst} is defined by more than one link")]
    DuplicateTarget { dst: usize },
    #[error("system is not square: {equations} equations in {variables} variables")]
    NotSquare { equations: usize, variables: usize },
    #[error("{0}")]
    Invalid(String),
}

/// Failures of the pairwise and realness predicates.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CertifyError {
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("point {0} is not a certified approximate solution")]
    NotCertified(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("system does not have real coefficients; realness cannot be decided")]
    NotRealMap,
}

/// Errors reading or validating the text formats.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid system: {0}")]
    Validation(#[from] SystemError),
    #[error("{0}")]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
