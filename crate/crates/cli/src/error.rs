use thiserror::Error;

/// Failure of a CLI run. The exit status separates bad input (2) from
/// physically impossible requests (3).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("physics error: {0}")]
    Physics(macrowave::Error),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<macrowave::Error> for CliError {
    fn from(e: macrowave::Error) -> Self {
        if e.is_config() {
            CliError::Config(e.to_string())
        } else {
            CliError::Physics(e)
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Physics(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    /// Prefixes the message with the config block it came from.
    pub fn in_block(self, block: &str) -> Self {
        match self {
            CliError::Config(m) => CliError::Config(format!("[{block}] {m}")),
            CliError::Physics(e) => CliError::Physics(match e {
                macrowave::Error::Domain(m) => macrowave::Error::Domain(format!("[{block}] {m}")),
                other => other,
            }),
            other => other,
        }
    }
}
