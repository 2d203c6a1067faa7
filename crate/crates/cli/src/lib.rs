//! Driver for translation-vector simulations, convergence sweeps and identity
//! checks. The `ptv` binary is a thin wrapper over [`simulate`], [`sweep`] and
//! [`check`].
//!
//! Exit codes: 0 success, 1 tolerance failure, 2 configuration, usage or I/O
//! error, 3 rotation vector out of domain.

pub mod check;
pub mod config;
pub mod output;
pub mod report;
pub mod simulate;
pub mod sweep;

use std::fmt;

pub use check::{check, CheckOptions};
pub use config::ScenarioConfig;
pub use report::ComparisonReport;
pub use simulate::simulate;
pub use sweep::sweep;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// A tolerance was exceeded (or the oracle failed to converge).
    Tolerance(String),
    /// Bad configuration, arguments or I/O.
    Usage(String),
    /// The rotation vector left its domain.
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Tolerance(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Tolerance(m) => write!(f, "tolerance failure: {m}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Domain(m) => write!(f, "domain error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ptv_core::Error> for CliError {
    fn from(e: ptv_core::Error) -> Self {
        use ptv_core::Error as E;
        match e {
            E::Domain { .. } | E::IntegrationDomain { .. } | E::Singular(_) => {
                CliError::Domain(e.to_string())
            }
            E::NotConverged { .. } => CliError::Tolerance(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Usage(format!("csv error: {e}"))
    }
}

/// `|a − b| / |b|`, or the absolute difference when `b` is zero.
pub fn relative(abs: f64, reference: f64) -> f64 {
    if reference > 0.0 {
        abs / reference
    } else {
        abs
    }
}
