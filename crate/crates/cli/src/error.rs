use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("solver error: {0}")]
    Solver(camscat_core::Error),
    #[error("flux mismatch: medium A gives {a:.6}, medium B gives {b:.6} (flux/2pi mod 2)")]
    FluxMismatch { a: f64, b: f64 },
    #[error("{failed} verification group(s) failed")]
    VerifyFailed { failed: usize },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::VerifyFailed { .. } => 1,
            CliError::Config(_) => 2,
            CliError::Solver(_) => 3,
            CliError::FluxMismatch { .. } => 4,
        })
    }
}

impl From<camscat_core::Error> for CliError {
    fn from(e: camscat_core::Error) -> Self {
        match e {
            camscat_core::Error::FluxMismatch { a, b } => CliError::FluxMismatch { a, b },
            other => CliError::Solver(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("i/o: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Config(format!("csv: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Config(format!("json: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
