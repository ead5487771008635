use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input file (CSV team, atom-set file, structure file).
    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    /// Malformed atom or formula text. `column` is 1-based, in characters.
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("variable `{0}` is not in the team domain")]
    MissingVariable(String),

    #[error("invalid variable name `{0}`")]
    InvalidVariable(String),

    /// A formula or team does not fit the structure it is evaluated in.
    #[error("{0}")]
    Vocabulary(String),

    /// An enumeration or search would exceed its configured bound.
    #[error("size limit exceeded in {what}: {actual} > {limit}")]
    Size {
        what: String,
        limit: u128,
        actual: u128,
    },

    /// A precondition of a library call was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),
}

impl Error {
    pub(crate) fn format(line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn syntax(column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            column,
            message: message.into(),
        }
    }

    pub(crate) fn size(what: impl Into<String>, limit: u128, actual: u128) -> Self {
        Error::Size {
            what: what.into(),
            limit,
            actual,
        }
    }

    /// True for errors caused by a guard or size bound rather than bad input.
    pub fn is_size(&self) -> bool {
        matches!(self, Error::Size { .. })
    }
}
