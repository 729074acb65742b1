use thiserror::Error;

/// Errors produced by automaton construction, decision procedures and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// A word contained a symbol the automaton does not read.
    #[error("symbol `{0}` is not in the automaton's alphabet")]
    UnknownSymbol(String),

    /// A construction outgrew its configured budget.
    #[error("resource budget of {budget} exceeded")]
    ResourceLimit { budget: usize },

    /// An operation was called outside its contract (mismatched alphabets,
    /// out-of-range arguments, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A machine file or argument could not be parsed.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
