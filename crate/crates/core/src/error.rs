use thiserror::Error;

use crate::report::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("algebras are defined over different base algebras")]
    BaseMismatch,

    #[error("invalid {what}: {report}")]
    Invalid {
        what: &'static str,
        report: ValidationReport,
    },

    #[error("{0} is not perfect")]
    NotPerfect(&'static str),

    #[error("morphism is not surjective")]
    NotSurjective,

    #[error("extension is not central: {0}")]
    NotCentral(ValidationReport),

    #[error("map is not invertible")]
    NotInvertible,

    #[error("{construction} is not well defined on the quotient: {detail}")]
    IllDefined { construction: &'static str, detail: String },

    #[error("degree {requested} exceeds the configured cap {cap}")]
    DegreeCap { requested: usize, cap: usize },

    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_dim(context: &str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context: context.to_string(),
            expected,
            found,
        })
    }
}
