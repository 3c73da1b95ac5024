use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] indexbound::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot read corpus {path}: {source}")]
    Corpus {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("corpus line {line}: {msg}")]
    CorpusLine { line: usize, msg: String },
    #[error("output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use indexbound::Error as E;
        match self {
            CliError::Core(E::CapExceeded { .. } | E::BudgetExceeded { .. }) => EXIT_LIMIT,
            CliError::Core(E::CountMismatch { .. }) => EXIT_VERIFY,
            _ => EXIT_USAGE,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
