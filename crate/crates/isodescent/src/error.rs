use isodescent_core::Error as CoreError;
use thiserror::Error;

/// Process exit codes of the command-line tool.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const INVALID_INPUT: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const INTERNAL: i32 = 4;
    pub const GENERATION_FAILED: i32 = 5;
}

#[derive(Debug, Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{what}: {source}")]
    Element {
        what: String,
        #[source]
        source: CoreError,
    },
    #[error("verification failed: {}", .0.join(", "))]
    VerifyFailed(Vec<String>),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Json(_) => exit::PARSE,
            AppError::Element { source, .. } => core_code(source),
            AppError::Core(e) => core_code(e),
            AppError::Io { .. } | AppError::Invalid(_) => exit::INVALID_INPUT,
            AppError::VerifyFailed(_) => exit::VERIFY_FAILED,
        }
    }

    /// Short machine-readable name used in bench rows.
    pub fn tag(&self) -> &'static str {
        match self {
            AppError::Core(e) | AppError::Element { source: e, .. } => core_tag(e),
            AppError::Json(_) => "PARSE_ERROR",
            AppError::Io { .. } | AppError::Invalid(_) => "INVALID_INPUT",
            AppError::VerifyFailed(_) => "VERIFY_FAILED",
        }
    }
}

fn core_code(e: &CoreError) -> i32 {
    match e {
        CoreError::Parse { .. } => exit::PARSE,
        CoreError::InternalInvariant(_) | CoreError::BalanceViolation { .. } => exit::INTERNAL,
        CoreError::GenerationFailed(_) => exit::GENERATION_FAILED,
        CoreError::DivisionByZero
        | CoreError::FieldMismatch
        | CoreError::DimensionMismatch(_)
        | CoreError::SingularMatrix
        | CoreError::InvalidDescriptor(_)
        | CoreError::InvalidInput(_) => exit::INVALID_INPUT,
    }
}

pub fn core_tag(e: &CoreError) -> &'static str {
    match e {
        CoreError::DivisionByZero => "DIVISION_BY_ZERO",
        CoreError::FieldMismatch => "FIELD_MISMATCH",
        CoreError::DimensionMismatch(_) => "DIMENSION_MISMATCH",
        CoreError::SingularMatrix => "SINGULAR_MATRIX",
        CoreError::Parse { .. } => "PARSE_ERROR",
        CoreError::InvalidDescriptor(_) => "INVALID_DESCRIPTOR",
        CoreError::InvalidInput(_) => "INVALID_INPUT",
        CoreError::BalanceViolation { .. } => "BALANCE_VIOLATION",
        CoreError::InternalInvariant(_) => "INTERNAL_INVARIANT",
        CoreError::GenerationFailed(_) => "GENERATION_FAILED",
    }
}
