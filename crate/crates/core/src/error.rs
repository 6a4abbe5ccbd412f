use thiserror::Error;

/// Errors raised by problem setup, evaluation, verification and solving.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OpmError {
    #[error("unknown problem '{0}'")]
    UnknownProblem(String),
    #[error("invalid dimension {n} for {problem}: {rule}")]
    InvalidDimension {
        problem: String,
        n: usize,
        rule: String,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("structure mismatch: {0}")]
    StructureMismatch(String),
    #[error("element index {index} out of range 1..={count}")]
    ElementIndexOutOfRange { index: usize, count: usize },
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("element {0} carries no gradient but a global gradient was requested")]
    MissingGradient(usize),
    #[error("element {0} carries no Hessian but a global Hessian was requested")]
    MissingHessian(usize),
    #[error("malformed classification '{input}' at position {position}: {reason}")]
    MalformedClassification {
        input: String,
        position: usize,
        reason: String,
    },
    #[error("duplicate problem name '{0}'")]
    DuplicateName(String),
    #[error("golden fixture missing: {0}")]
    FixtureMissing(String),
    #[error("problem {0} has bounded variables; only fixed variables are supported")]
    BoundsUnsupported(String),
    #[error("unsupported action '{0}'")]
    UnsupportedAction(String),
    #[error("invalid solver options: {0}")]
    InvalidOptions(String),
}

impl OpmError {
    /// Stable variant name, used by the command-line front end on stderr.
    pub fn kind(&self) -> &'static str {
        match self {
            OpmError::UnknownProblem(_) => "UnknownProblem",
            OpmError::InvalidDimension { .. } => "InvalidDimension",
            OpmError::InvalidParameter(_) => "InvalidParameter",
            OpmError::DimensionMismatch { .. } => "DimensionMismatch",
            OpmError::StructureMismatch(_) => "StructureMismatch",
            OpmError::ElementIndexOutOfRange { .. } => "ElementIndexOutOfRange",
            OpmError::ParameterMismatch(_) => "ParameterMismatch",
            OpmError::MissingGradient(_) => "MissingGradient",
            OpmError::MissingHessian(_) => "MissingHessian",
            OpmError::MalformedClassification { .. } => "MalformedClassification",
            OpmError::DuplicateName(_) => "DuplicateName",
            OpmError::FixtureMissing(_) => "FixtureMissing",
            OpmError::BoundsUnsupported(_) => "BoundsUnsupported",
            OpmError::UnsupportedAction(_) => "UnsupportedAction",
            OpmError::InvalidOptions(_) => "InvalidOptions",
        }
    }
}

pub type Result<T> = std::result::Result<T, OpmError>;
