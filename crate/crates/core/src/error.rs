use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} too large: {size} exceeds the limit of {limit}")]
    Budget {
        what: &'static str,
        size: u64,
        limit: u64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no value bound for variable `{0}`")]
    MissingVariable(String),

    #[error("oracle query #{index} failed: {source}")]
    Oracle {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by an enumeration guard or grid budget.
    pub fn is_budget(&self) -> bool {
        match self {
            Error::Budget { .. } => true,
            Error::Oracle { source, .. } => source.is_budget(),
            _ => false,
        }
    }
}
