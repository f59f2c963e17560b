use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown identifier `{0}`")]
    UnknownSymbol(String),

    #[error("unknown rule `{0}`")]
    UnknownRule(String),

    #[error("rule `{0}` is not applicable to the current configuration")]
    InapplicableRule(String),

    #[error("rule id `{0}` is used by two different rules")]
    ConflictingRule(String),

    #[error("alphabet has {symbols} symbols, above the explicit-search limit of {limit}; raise the limit (--limit-symbols) to search anyway")]
    TooManySymbols { symbols: usize, limit: usize },

    #[error("{what} has {size} elements, above the limit of {limit}; raise the limit to search anyway")]
    LimitExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("invalid model: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    /// Shifts a syntax error found inside a fragment that starts at the
    /// given position of an enclosing file.
    pub(crate) fn at_line(self, line: usize, column_offset: usize) -> Self {
        match self {
            Error::Syntax {
                column, message, ..
            } => Error::Syntax {
                line,
                column: column + column_offset,
                message,
            },
            other => other,
        }
    }
}
