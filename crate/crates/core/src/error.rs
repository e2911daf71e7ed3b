use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("unknown gallery order `{0}`")]
    UnknownGallery(String),

    #[error("unknown builtin tree `{0}`")]
    UnknownTree(String),

    #[error("undecidable without oracles: {0}")]
    Undecidable(String),

    #[error("no fallback index: every h(m, n) scanned below {budget} is empty")]
    NoFallbackIndex { budget: u64 },

    #[error("not a finite-basic cover: index {position} is the tail {index}")]
    NotFiniteBasicCover { position: u64, index: String },

    #[error("invalid gap certificate: {0}")]
    InvalidCertificate(String),

    #[error("order has no {0} element")]
    MissingEndpoint(&'static str),

    #[error("leftmost descent from {from} exceeded cap {cap}")]
    CapExceeded { from: String, cap: usize },

    #[error("oracle violates no-least-element premise at {0}")]
    NoLeastViolated(String),

    #[error("budget {0} exhausted inconclusively")]
    BudgetExhausted(u64),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
