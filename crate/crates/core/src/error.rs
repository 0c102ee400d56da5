use thiserror::Error;

/// Errors raised by the exponent, asymptotic and simulation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the open domain where the operation is defined.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// A root-finder could not bracket a solution.
    #[error("no root in {op}: {detail}")]
    NoRoot { op: &'static str, detail: String },

    /// The requested slope is outside the range of the derivative.
    #[error("range error in {op}: {detail}")]
    Range { op: &'static str, detail: String },

    /// The closed forms only exist for spectrally one-sided models.
    #[error("unsupported model for {op}: {detail}")]
    UnsupportedModel { op: &'static str, detail: String },

    /// A model or simulation configuration violates one of its invariants.
    #[error("validation error: {0}")]
    Validation(String),

    /// Malformed configuration text.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain { op, detail: detail.into() }
    }

    pub(crate) fn no_root(op: &'static str, detail: impl Into<String>) -> Self {
        Error::NoRoot { op, detail: detail.into() }
    }

    pub(crate) fn range(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Range { op, detail: detail.into() }
    }

    pub(crate) fn unsupported(op: &'static str, detail: impl Into<String>) -> Self {
        Error::UnsupportedModel { op, detail: detail.into() }
    }

    /// True for errors caused by bad input rather than numerical failure.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Validation(_) | Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
