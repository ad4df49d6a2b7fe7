use thiserror::Error;

/// Errors produced by the library.
///
/// Each variant maps to one error category of the command-line front end
/// (see [`Error::exit_code`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: parameter `{param}`: {reason}")]
    InvalidGeometry { param: String, reason: String },

    #[error("quadrature did not reach tolerance {tolerance:e}: estimate {coarse} (coarse) vs {fine} (fine), error {error:e}")]
    Accuracy {
        coarse: f64,
        fine: f64,
        error: f64,
        tolerance: f64,
    },

    #[error("profile tail mismatch at {side} end: deviation {deviation:e} exceeds {tolerance:e}; enlarge the window")]
    Truncation {
        side: &'static str,
        deviation: f64,
        tolerance: f64,
    },

    #[error("alignment failed: {0}")]
    Alignment(String),

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("grid too large for the direct charge sum: {charges} charges exceed the capacity of {capacity}; use a coarser grid")]
    Capacity { charges: usize, capacity: usize },

    #[error("field evaluated at its singular point {0:?}")]
    Singularity([f64; 3]),

    #[error("adaptive quadrature did not converge: value {value}, error estimate {error:e}")]
    Quadrature { value: f64, error: f64 },

    #[error("config: {0}")]
    Config(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code: 1 for user errors, 2 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidGeometry { .. }
            | Error::Truncation { .. }
            | Error::Domain(_)
            | Error::Capacity { .. }
            | Error::Config(_) => 1,
            Error::Accuracy { .. }
            | Error::Alignment(_)
            | Error::Singularity(_)
            | Error::Quadrature { .. }
            | Error::Verification(_)
            | Error::Io(_)
            | Error::Csv(_) => 2,
        }
    }

    pub(crate) fn geometry(param: &str, reason: impl Into<String>) -> Self {
        Error::InvalidGeometry {
            param: param.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
