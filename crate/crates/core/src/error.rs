use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: item id {id} is out of range for {items} items")]
    ItemOutOfRange {
        line: usize,
        id: usize,
        items: usize,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("infeasible partition: {rows} rows cannot fill {parts} non-empty parts")]
    InfeasiblePartition { rows: usize, parts: usize },

    #[error("value out of range: {0}")]
    Range(String),

    #[error("invalid key: {0}")]
    Key(String),

    #[error("{what} failed after {attempts} attempts")]
    RetryExhausted { what: &'static str, attempts: usize },

    #[error("routing error: {0}")]
    Routing(String),

    #[error("protocol integrity failure: {0}")]
    Integrity(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
