use thiserror::Error;

/// Errors raised by the algebraic modules and the command line front end.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown decoration label `{0}`")]
    UnknownDecoration(String),

    #[error("invalid decoration set: {0}")]
    InvalidDecorations(String),

    #[error("operation `{0}` is undefined on the empty forest")]
    EmptyForest(&'static str),

    #[error("operation `{0}` is undefined on the empty permutation")]
    EmptyPermutation(&'static str),

    #[error("not a word of distinct letters: {0}")]
    RepeatedLetter(String),

    #[error("basis map undefined on `{0}`")]
    Domain(String),

    #[error("degree {degree} exceeds the configured bound {bound}")]
    DegreeBound { degree: usize, bound: usize },

    #[error("singular Gram matrix in degree {0}")]
    SingularGram(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("too many vertices for the bijection oracle ({0} > 9)")]
    OracleCap(usize),

    #[error("series error: {0}")]
    Series(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
