use thiserror::Error;

/// Errors raised by constructions and checks in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not an exact power: {0}")]
    NotAPower(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("not etale: {0}")]
    NotEtale(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    /// True for failures caused by a too-small field or an exhausted search.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::FieldTooSmall(_) | Error::BudgetExceeded(_))
    }
}
