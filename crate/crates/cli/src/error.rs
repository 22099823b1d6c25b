use thiserror::Error;

use coverhom_core::Error as CoreError;

/// Errors surfaced by the command-line pipelines, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("group too large: closure exceeded {bound} elements")]
    TooLarge { bound: usize },
    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),
    #[error("automorphism `{name}` does not fix p: {}", .generators.join(", "))]
    NotInGamma { name: String, generators: Vec<String> },
    #[error("demo checks failed: {}", .0.join(", "))]
    ChecksFailed(Vec<String>),
    #[error(transparent)]
    Core(CoreError),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::TooLarge { .. } => 3,
            CliError::InvalidHomomorphism(_) => 4,
            CliError::NotInGamma { .. } => 5,
            CliError::ChecksFailed(_) | CliError::Core(_) | CliError::Io { .. } | CliError::Json(_) => 1,
        }
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Parse(m) => CliError::Parse(m),
            CoreError::InvalidPermutation(m) => CliError::Parse(format!("invalid permutation: {m}")),
            CoreError::UnknownTwist(t) => CliError::Parse(format!("unknown twist `{t}`")),
            CoreError::NotAutomorphism(m) => CliError::Parse(format!("not an automorphism: {m}")),
            CoreError::GroupTooLarge { bound } => CliError::TooLarge { bound },
            CoreError::InvalidHomomorphism(m) => CliError::InvalidHomomorphism(m),
            CoreError::NotSurjective => CliError::InvalidHomomorphism("not surjective".into()),
            other => CliError::Core(other),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
