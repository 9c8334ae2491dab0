use std::fmt;

/// Failure of a command, carrying the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad arguments, grid specs, column names or unparsable input. Exit code 2.
    Usage,
    /// Unreadable or physically invalid state. Exit code 3.
    InvalidState,
    /// Eigensolver or optimizer breakdown. Exit code 4.
    Numeric,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Usage => 2,
            ErrorKind::InvalidState => 3,
            ErrorKind::Numeric => 4,
        }
    }
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            kind: ErrorKind::Usage,
            message: message.into(),
        }
    }

    pub fn invalid_state(message: impl Into<String>) -> Self {
        Self {
            kind: ErrorKind::InvalidState,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind.exit_code()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<kway_core::Error> for CliError {
    fn from(e: kway_core::Error) -> Self {
        use kway_core::Error as E;
        let kind = match &e {
            E::NumericFailure { .. } | E::Purity { .. } => ErrorKind::Numeric,
            E::InvalidDims(_)
            | E::Shape { .. }
            | E::NotHermitian { .. }
            | E::Trace { .. }
            | E::NotPositive { .. }
            | E::Normalization { .. } => ErrorKind::InvalidState,
            _ => ErrorKind::Usage,
        };
        Self {
            kind,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
