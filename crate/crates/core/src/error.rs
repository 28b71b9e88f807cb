use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown simple type {letter}{rank}: {reason}")]
    InvalidType {
        letter: char,
        rank: usize,
        reason: String,
    },

    #[error("Lie algebra dimension {dim} exceeds the {max} slots available per exterior copy")]
    TooManySlots { dim: usize, max: usize },

    #[error(
        "component ({p},{q}) of {algebra} for {family}: weight block of dimension {block_dim} \
         exceeds the budget of {budget} (largest blocks: {largest:?}); raise --max-block-dim to opt in"
    )]
    Resource {
        family: String,
        algebra: String,
        p: usize,
        q: usize,
        block_dim: usize,
        budget: usize,
        largest: Vec<usize>,
    },

    #[error("element is not homogeneous of bidegree ({p},{q})")]
    Inhomogeneous { p: usize, q: usize },

    #[error("no element of the doubled-alcove set matches the ideal {ideal:?}")]
    ZetaUnmatched { ideal: Vec<usize> },

    #[error("invalid reduced word: {0}")]
    BadWord(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
