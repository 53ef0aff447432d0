use thiserror::Error;

/// Errors raised by the solvers and the simulation driver.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid or inconsistent configuration. `key` names the offending entry.
    #[error("configuration error [{key}]: {message}")]
    Config { key: String, message: String },

    /// A direct solve hit a zero pivot.
    #[error("singular system: zero pivot at row {index}")]
    Singular { index: usize },

    /// An iterative solve ran out of iterations.
    #[error("solver did not converge after {iterations} iterations (relative residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    /// The state became non-finite after a step.
    #[error("non-finite value at node {index} after step {step}")]
    NonFinite { step: usize, index: usize },

    /// A diagnostic could not be evaluated (e.g. zero-norm input).
    #[error("diagnostic error: {0}")]
    Diagnostic(String),

    /// The FFT path produced an imaginary residue: the kernel layout is wrong.
    #[error("imaginary residue {residue:e} exceeds threshold {threshold:e}")]
    ImaginaryResidue { residue: f64, threshold: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    /// True for errors produced by a linear solve or a blown-up state.
    pub fn is_solver_failure(&self) -> bool {
        matches!(
            self,
            Error::Singular { .. }
                | Error::NoConvergence { .. }
                | Error::NonFinite { .. }
                | Error::ImaginaryResidue { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
