//! Command implementations behind the `ratile` binary.

pub mod commands;
pub mod problem;
pub mod render;

use thiserror::Error;

/// A failure with its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Exit code 2.
    #[error("invalid input in `{field}`: {message}")]
    Invalid { field: String, message: String },
    /// Exit code 3.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    /// Exit code 4.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn invalid(field: impl Into<String>, message: impl ToString) -> Self {
        CliError::Invalid { field: field.into(), message: message.to_string() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid { .. } => 2,
            CliError::Inconclusive(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<ratile_core::tiles::TileError> for CliError {
    fn from(e: ratile_core::tiles::TileError) -> Self {
        use ratile_core::tiles::TileError;
        match e {
            TileError::TreeTooLarge { .. } | TileError::TooManyAddresses { .. } => {
                CliError::Inconclusive(e.to_string())
            }
            TileError::Digits(_) => CliError::invalid("digits", e),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

/// Caps the worker pool at `RATILE_THREADS` when set; a no-op if the pool already exists.
pub fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("RATILE_THREADS") {
        let n: usize =
            v.parse().map_err(|_| CliError::invalid("RATILE_THREADS", format!("not a thread count: {v}")))?;
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}
