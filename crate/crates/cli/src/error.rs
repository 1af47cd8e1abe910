use std::fmt;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::Io(_) => 3,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numeric(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl From<isodense_core::Error> for CliError {
    fn from(e: isodense_core::Error) -> Self {
        use isodense_core::Error as E;
        match e {
            E::Domain(_) | E::Branch(_) | E::Config(_) => CliError::Usage(e.to_string()),
            E::Bracket { .. } | E::Numeric(_) => CliError::Numeric(e.to_string()),
        }
    }
}
