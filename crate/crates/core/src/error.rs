//! Crate error type.

use std::fmt;

/// Errors raised by constructors and operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Malformed input: empty generator lists, singular bases, bad tables.
    InvalidInput(String),
    /// A point fed to an evaluation map lies outside its domain.
    Domain(String),
    /// Semicharacter fit failed; carries the largest multiplicativity residual.
    FitFailure { max_residual: f64 },
    /// Samples cannot determine a semicharacter (their exponents miss the gcd).
    Underdetermined { sample_gcd: u64, required: u64 },
    /// The meet table of a spine is inconsistent (lower bounds without a greatest one).
    InvalidSpine(String),
    /// A neighbourhood or suite specification is malformed.
    InvalidSpec(String),
    /// Spectrum membership asked for a family without a closed-form test.
    UnsupportedFamily(String),
    /// A dilation pushed every grid node outside the operator support.
    DegenerateOperator(String),
    /// Requested tensor dimension exceeds the configured bound.
    ResourceLimit(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::FitFailure { max_residual } => {
                write!(f, "fit failure: max residual {max_residual:.3e}")
            }
            Error::Underdetermined {
                sample_gcd,
                required,
            } => write!(
                f,
                "underdetermined: sample exponents reach gcd {sample_gcd}, need {required}"
            ),
            Error::InvalidSpine(m) => write!(f, "invalid spine: {m}"),
            Error::InvalidSpec(m) => write!(f, "invalid spec: {m}"),
            Error::UnsupportedFamily(m) => write!(f, "unsupported family: {m}"),
            Error::DegenerateOperator(m) => write!(f, "degenerate operator: {m}"),
            Error::ResourceLimit(m) => write!(f, "resource limit: {m}"),
        }
    }
}

impl std::error::Error for Error {}
