use thiserror::Error;

/// Errors raised anywhere in the core crate.
///
/// Every variant that can come out of an algorithm carries the name of the
/// procedure that failed, so a CLI user can tell which stage broke.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} variables")]
    Dimension { left: usize, right: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("count mismatch: expected {expected}, got {got}")]
    Count { expected: usize, got: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("singular matrix cannot define a linear change of coordinates")]
    Singular,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("{procedure}: {message}")]
    Domain {
        procedure: &'static str,
        message: String,
    },

    #[error("{procedure}: resource cap exceeded: {what} (cap {cap})")]
    Resource {
        procedure: &'static str,
        what: String,
        cap: u64,
    },

    #[error("{procedure}: verification failed: {message}")]
    Verification {
        procedure: &'static str,
        message: String,
    },
}

impl Error {
    pub fn domain(procedure: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            procedure,
            message: message.into(),
        }
    }

    pub fn resource(procedure: &'static str, what: impl Into<String>, cap: u64) -> Self {
        Error::Resource {
            procedure,
            what: what.into(),
            cap,
        }
    }

    pub fn verification(procedure: &'static str, message: impl Into<String>) -> Self {
        Error::Verification {
            procedure,
            message: message.into(),
        }
    }

    /// Prefix the stage context onto the message of algorithmic errors.
    pub fn in_stage(self, stage: &str) -> Self {
        match self {
            Error::Domain { procedure, message } => Error::Domain {
                procedure,
                message: format!("{stage}: {message}"),
            },
            Error::Resource { procedure, what, cap } => Error::Resource {
                procedure,
                what: format!("{stage}: {what}"),
                cap,
            },
            Error::Verification { procedure, message } => Error::Verification {
                procedure,
                message: format!("{stage}: {message}"),
            },
            other => other,
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }

    pub fn is_verification(&self) -> bool {
        matches!(self, Error::Verification { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
