//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes of the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    Domain(String),
    /// A truncation cutoff would exceed its hard cap.
    Capacity {
        what: String,
        needed: usize,
        cap: usize,
    },
    /// Overflow, non-convergence, or loss of validity mid-computation.
    Numerical(String),
    /// A quantity violated a structural constraint it must satisfy
    /// (negative variance, eigenvalue below zero, ...).
    Consistency(String),
    /// No scaling region could be identified in a correlation integral.
    InsufficientScaling(String),
    /// An estimator failed to saturate within its allowed range.
    NoConvergence(String),
    /// Not enough usable data (e.g. no valid neighbor pairs).
    DegenerateData(String),
    /// Adaptive step size underflow in an ODE integration.
    Stiffness(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(s) => write!(f, "domain error: {s}"),
            Error::Capacity { what, needed, cap } => {
                write!(f, "capacity error: {what} needs {needed}, cap is {cap}")
            }
            Error::Numerical(s) => write!(f, "numerical error: {s}"),
            Error::Consistency(s) => write!(f, "consistency error: {s}"),
            Error::InsufficientScaling(s) => write!(f, "insufficient scaling: {s}"),
            Error::NoConvergence(s) => write!(f, "no convergence: {s}"),
            Error::DegenerateData(s) => write!(f, "degenerate data: {s}"),
            Error::Stiffness(s) => write!(f, "stiffness error: {s}"),
        }
    }
}

impl core::error::Error for Error {}
