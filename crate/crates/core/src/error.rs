use thiserror::Error;

pub type Result<T> = std::result::Result<T, QwkbError>;

#[derive(Debug, Error)]
pub enum QwkbError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("capacity exceeded: {what} requested order {requested}, available {available}")]
    Capacity {
        what: &'static str,
        requested: usize,
        available: usize,
    },
    #[error(
        "convergence failure after {iterations} iterations ({achieved_digits} digits achieved)"
    )]
    Convergence {
        iterations: usize,
        achieved_digits: u32,
    },
    #[error("unknown table id `{0}`")]
    Lookup(String),
    #[error("index {index} outside reference range 0..{len}")]
    Range { index: usize, len: usize },
    #[error("strategy {strategy} is not supported for series kind {kind}")]
    UnsupportedStrategy {
        strategy: &'static str,
        kind: &'static str,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl QwkbError {
    pub(crate) fn capacity(what: &'static str, requested: usize, available: usize) -> Self {
        QwkbError::Capacity {
            what,
            requested,
            available,
        }
    }
}
