use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] einstab_core::Error),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// Wraps a core error caused by bad user input.
    pub fn from_usage(e: einstab_core::Error) -> Self {
        match e {
            einstab_core::Error::Parameter(m) => CliError::Usage(m),
            other => CliError::Core(other),
        }
    }

    pub fn exit_code(&self) -> u8 {
        exit_code_for(self)
    }
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_SOLVER: u8 = 3;
pub const EXIT_INVARIANT: u8 = 4;

fn exit_code_for(e: &CliError) -> u8 {
    use einstab_core::Error as E;
    match e {
        CliError::Usage(_) | CliError::Core(E::Parameter(_)) => EXIT_USAGE,
        CliError::Core(E::SolverFailure { .. } | E::NumericalDomain(_)) => EXIT_SOLVER,
        CliError::Core(E::Consistency(_)) | CliError::Invariant(_) => EXIT_INVARIANT,
    }
}
