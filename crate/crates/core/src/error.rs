use thiserror::Error;

/// Errors produced by the risk-measure library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation
    /// (a probability outside `[0, 1)`, an inverted interval, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter bundle failed validation at construction time.
    #[error("invalid {what}: {reason}")]
    Validation { what: &'static str, reason: String },

    /// A risk-aversion function violates one of positivity, monotonicity or
    /// unit norm.
    #[error("inadmissible aversion function: {0}")]
    Admissibility(Admissibility),

    /// Aligned scenario vectors have different lengths.
    #[error("scenario alignment: expected {expected} scenarios, position {position} has {found}")]
    Alignment {
        position: usize,
        expected: usize,
        found: usize,
    },

    /// Input data is structurally unusable (too short, empty, unsorted).
    #[error("input error: {0}")]
    Input(String),

    /// The requested operation is not available for this configuration.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// The admissibility condition an aversion function failed.
#[derive(Debug, Clone, PartialEq)]
pub enum Admissibility {
    Positivity { at: f64, value: f64 },
    Monotonicity { at: f64, previous: f64, value: f64 },
    Norm { norm: f64 },
    Quadrature { lo: f64, hi: f64 },
}

impl std::fmt::Display for Admissibility {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Admissibility::Positivity { at, value } => {
                write!(f, "positivity violated: phi({at}) = {value} < 0")
            }
            Admissibility::Monotonicity { at, previous, value } => write!(
                f,
                "monotonicity violated: phi({at}) = {value} below preceding value {previous}"
            ),
            Admissibility::Norm { norm } => {
                write!(f, "unit norm violated: integral over [beta, 1] is {norm}")
            }
            Admissibility::Quadrature { lo, hi } => {
                write!(f, "quadrature did not converge on [{lo}, {hi}]")
            }
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Error {
    Error::Validation {
        what,
        reason: reason.into(),
    }
}
