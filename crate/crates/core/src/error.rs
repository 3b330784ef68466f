use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("module mismatch: {0}")]
    ModuleMismatch(String),

    #[error("symbol `{symbol}` does not belong to {context}")]
    UnknownSymbol { symbol: String, context: String },

    #[error("ring has no local-unit rule: {0}")]
    NoLocalUnits(String),

    #[error("coefficient group mixes free and torsion parts: {0}")]
    MixedCoefficients(String),

    #[error("matrix shape error: {0}")]
    Shape(String),

    #[error("left action not compact: {0}")]
    NotCompact(String),

    #[error("truncation too shallow: {0}")]
    InsufficientDepth(String),

    #[error("operator is not a word in creations, annihilations and scalars")]
    NotAWord,

    #[error("inconsistent recursion table: {0}")]
    InconsistentRecursion(String),

    #[error("{kind} error at line {line}, column {column}: {message}")]
    Parse {
        kind: &'static str,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("semantic error: {0}")]
    Semantic(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
