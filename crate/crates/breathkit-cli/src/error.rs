//! Error-to-exit-status mapping for the command line.
//!
//! Contract: 0 success, 1 usage error, 2 domain or consistency error,
//! 3 verification failure, 4 I/O error.

use breathkit_core::geometry::GeometryError;
use breathkit_core::packing::PackingError;
use breathkit_core::partition::PartitionError;
use breathkit_core::sweep::SweepError;
use std::fmt;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Verification(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Verification(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage: {msg}"),
            CliError::Domain(msg) => write!(f, "domain: {msg}"),
            CliError::Verification(msg) => write!(f, "verification: {msg}"),
            CliError::Io(msg) => write!(f, "io: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<PackingError> for CliError {
    fn from(e: PackingError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<PartitionError> for CliError {
    fn from(e: PartitionError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<SweepError> for CliError {
    fn from(e: SweepError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
