use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, config keys or input files. Exit code 2.
    #[error("{0}")]
    Config(String),
    /// A library routine refused the input. Exit code 3.
    #[error(transparent)]
    Numerical(#[from] framekit::Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn config(path: impl AsRef<str>, msg: impl AsRef<str>) -> Self {
        CliError::Config(format!("{}: {}", path.as_ref(), msg.as_ref()))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CliError::Config(_) => "ConfigInvalid",
            CliError::Numerical(e) => e.name(),
            CliError::Io(_) => "IoError",
        }
    }
}
