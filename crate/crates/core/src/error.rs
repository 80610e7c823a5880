use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field characteristic {0}: expected 0 or a prime below 2^31")]
    InvalidField(u64),

    #[error("invalid clutter: {0}")]
    InvalidClutter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("zero ideal (complement is empty)")]
    ZeroIdeal,

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),

    #[error("clutter is not a pseudo-manifold")]
    NotPseudoManifold,

    #[error("non-integral or negative Betti number: {0}")]
    NonIntegralBetti(String),

    #[error("formula value is not an integer: {0}")]
    NonIntegral(String),

    #[error("inconsistent input: {0}")]
    InconsistentInput(String),

    #[error("fixture {name} failed validation: {reason}")]
    FixtureValidationFailed { name: &'static str, reason: String },

    #[error("invalid glue: {0}")]
    InvalidGlue(String),
}

impl Error {
    /// Parse errors are input problems; everything else is a domain error.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
