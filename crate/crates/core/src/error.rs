use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet must contain at least 2 distinct symbols")]
    AlphabetTooSmall,
    #[error("duplicate symbol '{0}' in alphabet")]
    DuplicateSymbol(char),
    #[error("symbol '{0}' does not belong to the alphabet")]
    UnknownSymbol(char),
    #[error("operation requires a nonempty word")]
    EmptyWord,
    #[error("operation requires a binary alphabet")]
    NonBinaryAlphabet,
    #[error("words have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("operands are over different alphabets")]
    AlphabetMismatch,
    #[error("relation budget must be at least 1")]
    BadBudget,
    #[error("the empty word is not allowed in a code")]
    EpsilonInCode,
    #[error("input is not a code: {0}")]
    NotACode(String),
    #[error("language complete: no external witness exists")]
    LanguageComplete,
    #[error("input language is already complete")]
    AlreadyComplete,
    #[error("relation {0} is not supported here: {1}")]
    UnsupportedRelation(String, String),
    #[error("resource guard exceeded: {what} = {actual} > {bound}")]
    GuardExceeded {
        what: &'static str,
        bound: usize,
        actual: usize,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
