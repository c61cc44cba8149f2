//! Process-level failures, split along the exit-code contract.

#[derive(Debug)]
pub enum CliError {
    /// Field-level config diagnostics; the process exits with code 2.
    Config(Vec<String>),
    /// Execution failure on a valid config; the process exits with code 1.
    Runtime(String),
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError::Config(vec![message.into()])
    }
}

impl From<kernelshot::Error> for CliError {
    fn from(e: kernelshot::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}
