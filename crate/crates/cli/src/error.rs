use borelwb::automata::AutomataError;
use borelwb::borelcode::{CodeOpError, Rejection, Violation};
use borelwb::games::GameError;
use borelwb::mso::MsoError;
use thiserror::Error;

/// Exit code 1 for unreadable input, 2 for exceeded resources, 3 for failed
/// checks.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Resource(_) => 2,
            CliError::Check(_) => 3,
        }
    }
}

impl From<AutomataError> for CliError {
    fn from(e: AutomataError) -> Self {
        match e {
            AutomataError::ResourceExceeded { .. } => CliError::Resource(e.to_string()),
            e => CliError::Parse(e.to_string()),
        }
    }
}

impl From<MsoError> for CliError {
    fn from(e: MsoError) -> Self {
        match e {
            MsoError::Automata(a) => a.into(),
            MsoError::BoundExceeded { .. } => CliError::Resource(e.to_string()),
            e => CliError::Parse(e.to_string()),
        }
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::Automata(a) => a.into(),
            e => CliError::Parse(e.to_string()),
        }
    }
}

impl From<Violation> for CliError {
    fn from(e: Violation) -> Self {
        match e {
            Violation::Automata(a) => a.into(),
            e => CliError::Parse(format!("invalid description: {e}")),
        }
    }
}

impl From<CodeOpError> for CliError {
    fn from(e: CodeOpError) -> Self {
        match e {
            CodeOpError::Automata(a) => a.into(),
            e => CliError::Parse(e.to_string()),
        }
    }
}

/// Rejections are answers, except for exhausted resources.
pub fn resource_of(r: &Rejection) -> Option<CliError> {
    match r.root() {
        Rejection::Resource(a) => Some(a.clone().into()),
        _ => None,
    }
}
