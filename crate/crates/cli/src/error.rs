use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] dunkl_bose::Error),
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("malformed table: {0}")]
    Table(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for domain and validation errors, 3 for numerical failures,
    /// 1 for anything environmental.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_domain_like() => 2,
            CliError::Core(_) => 3,
            CliError::Usage(_) => 2,
            CliError::Table(_) | CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
