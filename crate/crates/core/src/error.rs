use thiserror::Error as ThisError;

#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    #[error("invalid surjection word: {0}")]
    InvalidSurjection(String),
    #[error("malformed simplicial set: {0}")]
    Malformed(String),
    #[error("simplicial identity fails at cell ({dim}, {index}): d{i} d{j} != d{jm1} d{i}", jm1 = .j - 1)]
    IdentityViolation {
        dim: usize,
        index: usize,
        i: usize,
        j: usize,
    },
    #[error("map is not simplicial: {0}")]
    NotSimplicial(String),
    #[error("codomain mismatch: {0}")]
    CodomainMismatch(String),
    #[error("input is only faithful up to dimension {faithful}, but dimension {needed} is required")]
    Truncation { needed: usize, faithful: usize },
    #[error("invalid horn: {0}")]
    Horn(String),
    #[error("invalid category: {0}")]
    Category(String),
    #[error("missing composite for the pair ({0}, {1})")]
    MissingComposite(String, String),
    #[error("not a quasicategory at bound {bound}: {reason}")]
    NotQuasicategory { bound: usize, reason: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("certificate step {step}: {reason}")]
    Certificate { step: String, reason: String },
    #[error("format error: {0}")]
    Format(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
