use std::fmt;

/// Errors shared by every module of the crate.
///
/// Each variant maps onto one of the failure classes the command line
/// distinguishes: malformed input, a violated operation contract, an
/// exceeded resource cap, or data that cannot describe any cover.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("contract error: {0}")]
    Contract(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resource cap exceeded: {what} (cap {cap})")]
    Resource { what: String, cap: u128 },
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn input(msg: impl fmt::Display) -> Self {
        Error::Input(msg.to_string())
    }

    pub fn contract(msg: impl fmt::Display) -> Self {
        Error::Contract(msg.to_string())
    }

    pub fn precondition(msg: impl fmt::Display) -> Self {
        Error::Precondition(msg.to_string())
    }

    pub fn inconsistent(msg: impl fmt::Display) -> Self {
        Error::Inconsistent(msg.to_string())
    }

    pub fn resource(what: impl fmt::Display, cap: impl Into<u128>) -> Self {
        Error::Resource {
            what: what.to_string(),
            cap: cap.into(),
        }
    }

    pub fn parse(line: usize, column: usize, msg: impl fmt::Display) -> Self {
        Error::Parse {
            line,
            column,
            message: msg.to_string(),
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. })
    }
}
