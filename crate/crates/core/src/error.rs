use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A system specification violates one of its structural constraints.
    #[error("invalid-spec: {0}")]
    InvalidSpec(String),

    #[error("invalid-argument: {0}")]
    InvalidArgument(String),

    /// A spec document failed validation; `field` names the offending key.
    #[error("validation-error: field `{field}`: {constraint}")]
    Validation { field: String, constraint: String },

    #[error("parse-error: {0}")]
    Parse(String),

    #[error("cap-exceeded: {0}")]
    CapExceeded(String),

    #[error("unreachable-target: {0}")]
    UnreachableTarget(String),

    #[error("invalid-regime: {0}")]
    InvalidRegime(String),

    /// A count or exponent is too large for the exact integer path.
    #[error("too-large: {0}")]
    TooLarge(String),
}

impl Error {
    pub fn validation(field: impl Into<String>, constraint: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            constraint: constraint.into(),
        }
    }

    /// Short machine-readable tag, the prefix of the display form.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::InvalidSpec(_) => "invalid-spec",
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Validation { .. } => "validation-error",
            Error::Parse(_) => "parse-error",
            Error::CapExceeded(_) => "cap-exceeded",
            Error::UnreachableTarget(_) => "unreachable-target",
            Error::InvalidRegime(_) => "invalid-regime",
            Error::TooLarge(_) => "too-large",
        }
    }
}
