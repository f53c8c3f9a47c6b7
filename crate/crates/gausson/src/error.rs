//! Crate-wide error type.

use std::fmt;

/// Errors produced by solvers, constructors, and the CLI layer.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside its admissible domain (e.g. power-law exponent p <= 3/4).
    Parameter(String),
    /// A requested domain (ball radius, grid window) exceeds what the data covers.
    Domain(String),
    /// Input field samples contain NaN/Inf or mismatched shapes.
    InvalidField(String),
    /// Shapes of stacked grids disagree.
    Shape(String),
    /// Monotone inversion of the ground-state map failed.
    Inversion(String),
    /// Radial shooting did not bracket the requested eigenvalue.
    EigenvalueNotFound(String),
    /// The decaying tail left the integration window.
    DomainTooSmall(String),
    /// The frequency equation had no root on the selected branch.
    FrequencySolve(String),
    /// Kinematics violation (|v| >= c).
    Kinematics(String),
    /// Characteristic construction failed; carries the offending state.
    Construction {
        what: String,
        tau: f64,
        z: f64,
        phi: f64,
    },
    /// Root not bracketed when inverting the characteristic map.
    CharInversion(String),
    /// Grid resolution below what an operation requires.
    Resolution(String),
    /// Configuration parse/validation failure.
    Config(String),
    /// Underlying I/O failure.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parameter(s) => write!(f, "parameter out of domain: {s}"),
            Error::Domain(s) => write!(f, "domain error: {s}"),
            Error::InvalidField(s) => write!(f, "invalid field: {s}"),
            Error::Shape(s) => write!(f, "shape mismatch: {s}"),
            Error::Inversion(s) => write!(f, "inversion failure: {s}"),
            Error::EigenvalueNotFound(s) => write!(f, "eigenvalue not found: {s}"),
            Error::DomainTooSmall(s) => write!(f, "domain too small: {s}"),
            Error::FrequencySolve(s) => write!(f, "frequency solve failed: {s}"),
            Error::Kinematics(s) => write!(f, "kinematics error: {s}"),
            Error::Construction { what, tau, z, phi } => write!(
                f,
                "characteristic construction failure: {what} at (tau={tau:.6e}, z={z:.6e}, phi={phi:.6e})"
            ),
            Error::CharInversion(s) => write!(f, "characteristic map inversion: {s}"),
            Error::Resolution(s) => write!(f, "resolution too coarse: {s}"),
            Error::Config(s) => write!(f, "config error: {s}"),
            Error::Io(s) => write!(f, "io error: {s}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
