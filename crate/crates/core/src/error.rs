use std::path::PathBuf;

/// Errors raised by the calculator.
///
/// Variants fall into two groups: bad or inconsistent input (`exit_code` 1)
/// and well-formed input outside the hypotheses of a theorem (`exit_code` 2).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("shape error: expected length {expected}, found {found}")]
    Shape { expected: usize, found: usize },

    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("c1 is not characteristic: pairing with basis class {index} has the wrong parity")]
    NotCharacteristic { index: usize },

    #[error("invalid spin^c structure: {0}")]
    InvalidSpinC(String),

    #[error("integrality error: t[{i}][{j}] = {value} is odd, so c1(Ind D) would not be integral")]
    Integrality { i: usize, j: usize, value: i64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown generator `{token}` at byte {offset}")]
    UnknownGenerator { offset: usize, token: String },

    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),

    #[error("not addressed: {0}")]
    NotAddressed(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        if self.is_inapplicable() {
            2
        } else {
            1
        }
    }

    /// True when the input is valid but a theorem's hypotheses are not met.
    pub fn is_inapplicable(&self) -> bool {
        matches!(
            self,
            Error::UnsupportedFamily(_) | Error::NotAddressed(_) | Error::Precondition(_)
        )
    }

    /// Short machine-readable tag used in JSON error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Shape { .. } => "shape",
            Error::Overflow(_) => "overflow",
            Error::Validation(_) => "validation",
            Error::NotCharacteristic { .. } => "not_characteristic",
            Error::InvalidSpinC(_) => "invalid_spinc",
            Error::Integrality { .. } => "integrality",
            Error::Domain(_) => "domain",
            Error::Syntax { .. } => "syntax",
            Error::UnknownGenerator { .. } => "unknown_generator",
            Error::Io { .. } => "io",
            Error::UnsupportedFamily(_) => "unsupported_family",
            Error::NotAddressed(_) => "not_addressed",
            Error::Precondition(_) => "precondition",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
