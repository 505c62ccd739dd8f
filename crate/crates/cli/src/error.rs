use std::fmt;

use cotame_core::Error;
#[cfg(feature = "engine")]
use cotame_engine::error::EngineError;

/// Location and reason for a rejected input. Columns are 1-based byte offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub fn at(col: usize, msg: impl Into<String>) -> ParseError {
        ParseError { line: 1, col, msg: msg.into() }
    }

    pub fn on_line(mut self, line: usize, offset: usize) -> ParseError {
        self.line = line;
        self.col += offset;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParseError: line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Parse(ParseError),
    Arity { expected: usize, found: usize },
    Algebra(Error),
    #[cfg(feature = "engine")]
    Engine(EngineError),
    Io(String),
    Usage(String),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Algebra(e)
    }
}

#[cfg(feature = "engine")]
impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        CliError::Engine(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "{e}"),
            CliError::Arity { expected, found } => {
                write!(f, "ArityError: expected {expected} components, found {found}")
            }
            CliError::Algebra(e) => write!(f, "{e}"),
            #[cfg(feature = "engine")]
            CliError::Engine(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "IoError: {m}"),
            CliError::Usage(m) => write!(f, "UsageError: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

pub type Result<T> = std::result::Result<T, CliError>;
