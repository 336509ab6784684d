//! Error type shared by all modules.

use std::fmt;

/// Domain and construction errors.
#[derive(Debug, Clone, PartialEq)]
pub enum QError {
    /// A base parameter was outside the range an operation requires.
    BaseOutOfRange {
        required: &'static str,
        got: f64,
    },
    /// The q-difference quotient is singular at t = 0 for non-polynomial
    /// functions.
    DerivativeAtZero,
    /// Builtin function name not present in the registry.
    UnknownBuiltin(String),
    /// A builtin parameter is missing or invalid.
    InvalidParameter {
        name: String,
        reason: &'static str,
    },
    /// Breakpoints or knots are not strictly increasing.
    UnsortedKnots,
    /// Not enough knots for the requested construction.
    InsufficientKnots {
        needed: usize,
        got: usize,
    },
    /// Piece count does not match the breakpoint intervals.
    PieceCountMismatch {
        pieces: usize,
        intervals: usize,
    },
    /// Exponents fail the conjugacy relation 1/p1 + 1/p2 = 1.
    ExponentMismatch {
        p1: f64,
        p2: f64,
    },
    /// An exponent outside the supported set was requested.
    UnsupportedExponent {
        got: f64,
    },
    /// A functional failed its polynomial-annihilation check.
    NotAnnihilating {
        degree: usize,
        moment: f64,
    },
    /// A sign change was found where one-signedness is required.
    SignChange {
        at: f64,
    },
    /// The linear system for weight optimization is singular.
    SingularSystem,
    /// Invalid integral configuration.
    InvalidConfig(&'static str),
    /// A point or interval lies outside the functional's domain.
    OutsideDomain {
        value: f64,
    },
    /// Weight and node counts disagree.
    WeightCountMismatch {
        nodes: usize,
        weights: usize,
    },
}

impl fmt::Display for QError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QError::BaseOutOfRange { required, got } => {
                write!(f, "base parameter must satisfy {required}, got {got}")
            }
            QError::DerivativeAtZero => {
                write!(f, "q-difference quotient is singular at t = 0")
            }
            QError::UnknownBuiltin(name) => write!(f, "unknown builtin function `{name}`"),
            QError::InvalidParameter { name, reason } => {
                write!(f, "invalid parameter `{name}`: {reason}")
            }
            QError::UnsortedKnots => write!(f, "knots must be strictly increasing"),
            QError::InsufficientKnots { needed, got } => {
                write!(f, "need at least {needed} knots, got {got}")
            }
            QError::PieceCountMismatch { pieces, intervals } => {
                write!(f, "{pieces} pieces do not fit {intervals} intervals")
            }
            QError::ExponentMismatch { p1, p2 } => {
                write!(f, "exponents {p1}, {p2} are not conjugate")
            }
            QError::UnsupportedExponent { got } => {
                write!(f, "unsupported exponent {got}; expected 2 or inf")
            }
            QError::NotAnnihilating { degree, moment } => {
                write!(
                    f,
                    "functional does not annihilate degree {degree}: moment {moment:e}"
                )
            }
            QError::SignChange { at } => write!(f, "sign change detected near {at}"),
            QError::SingularSystem => write!(f, "normal equations are singular"),
            QError::InvalidConfig(what) => write!(f, "invalid configuration: {what}"),
            QError::OutsideDomain { value } => {
                write!(f, "point {value} lies outside the functional domain")
            }
            QError::WeightCountMismatch { nodes, weights } => {
                write!(f, "{weights} weights for {nodes} nodes")
            }
        }
    }
}

impl std::error::Error for QError {}

pub type QResult<T> = Result<T, QError>;
