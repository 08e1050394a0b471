use thiserror::Error;

/// Errors raised by library operations.
///
/// Every variant records the module and operation it came from so that the
/// command-line front end can report provenance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{module}::{op}: {detail}")]
    Mismatch {
        module: &'static str,
        op: &'static str,
        detail: String,
    },

    #[error("{module}::{op}: invalid input: {detail}")]
    Invalid {
        module: &'static str,
        op: &'static str,
        detail: String,
    },

    #[error("{module}::{op}: needs dimension {needed} but data is truncated at {available}")]
    Truncation {
        module: &'static str,
        op: &'static str,
        needed: usize,
        available: usize,
    },

    #[error("{module}::{op}: instance lacks capability: {detail}")]
    Capability {
        module: &'static str,
        op: &'static str,
        detail: String,
    },

    #[error("{module}::{op}: budget exhausted: {detail}")]
    Budget {
        module: &'static str,
        op: &'static str,
        detail: String,
    },

    #[error("{module}::{op}: parse error: {detail}")]
    Parse {
        module: &'static str,
        op: &'static str,
        detail: String,
    },
}

impl Error {
    pub fn mismatch(module: &'static str, op: &'static str, detail: impl Into<String>) -> Self {
        Error::Mismatch {
            module,
            op,
            detail: detail.into(),
        }
    }

    pub fn invalid(module: &'static str, op: &'static str, detail: impl Into<String>) -> Self {
        Error::Invalid {
            module,
            op,
            detail: detail.into(),
        }
    }

    pub fn truncation(module: &'static str, op: &'static str, needed: usize, available: usize) -> Self {
        Error::Truncation {
            module,
            op,
            needed,
            available,
        }
    }

    pub fn capability(module: &'static str, op: &'static str, detail: impl Into<String>) -> Self {
        Error::Capability {
            module,
            op,
            detail: detail.into(),
        }
    }

    pub fn budget(module: &'static str, op: &'static str, detail: impl Into<String>) -> Self {
        Error::Budget {
            module,
            op,
            detail: detail.into(),
        }
    }

    pub fn parse(module: &'static str, op: &'static str, detail: impl Into<String>) -> Self {
        Error::Parse {
            module,
            op,
            detail: detail.into(),
        }
    }

    pub fn module(&self) -> &'static str {
        match self {
            Error::Mismatch { module, .. }
            | Error::Invalid { module, .. }
            | Error::Truncation { module, .. }
            | Error::Capability { module, .. }
            | Error::Budget { module, .. }
            | Error::Parse { module, .. } => module,
        }
    }

    pub fn op(&self) -> &'static str {
        match self {
            Error::Mismatch { op, .. }
            | Error::Invalid { op, .. }
            | Error::Truncation { op, .. }
            | Error::Capability { op, .. }
            | Error::Budget { op, .. }
            | Error::Parse { op, .. } => op,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Mismatch { .. } => "mismatch",
            Error::Invalid { .. } => "invalid",
            Error::Truncation { .. } => "truncation",
            Error::Capability { .. } => "capability",
            Error::Budget { .. } => "budget",
            Error::Parse { .. } => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
