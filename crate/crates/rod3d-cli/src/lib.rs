//! Command-line front end for the slipping-rod dynamics library: every
//! subcommand evaluates one part of the library and emits deterministic
//! CSV/JSON datasets plus a run manifest.

pub mod cli;
pub mod commands;
pub mod config;
pub mod output;
pub mod state_json;

/// Exit code for malformed input or missing arguments.
pub const EXIT_USAGE: i32 = 2;
/// Exit code for domain failures (empty manifold with
/// `--require-nonempty`, invalid states, no separatrix bracket).
pub const EXIT_DOMAIN: i32 = 3;

/// Error carrying the intended process exit code.
#[derive(Debug)]
pub struct AppError {
    pub code: i32,
    pub message: String,
}

impl std::fmt::Display for AppError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for AppError {}

impl AppError {
    pub fn usage(message: impl Into<String>) -> Self {
        AppError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn domain(message: impl Into<String>) -> Self {
        AppError {
            code: EXIT_DOMAIN,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        AppError {
            code: 1,
            message: message.into(),
        }
    }
}

pub type AppResult<T> = Result<T, AppError>;
