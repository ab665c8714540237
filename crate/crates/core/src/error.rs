use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed group configuration: {0}")]
    Config(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("Coxeter matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("Coxeter matrix diagonal entry ({0}, {0}) must be 1")]
    BadDiagonal(usize),
    #[error("Coxeter matrix entry ({0}, {1}) = {2} must be at least 2 (or 0 for infinity)")]
    BadOrder(usize, usize, u64),
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("resource cap exceeded: more than {0} elements")]
    ElementCap(usize),
    #[error("small-root recursion produced more than {0} roots")]
    RootCap(usize),
    #[error("invalid cap {0}: must be at least 1")]
    InvalidCap(usize),
    #[error("operation requires two distinct walls")]
    SameWall,
    #[error("unknown output format {0:?}")]
    UnknownFormat(String),
    #[error("malformed automaton document: {0}")]
    Automaton(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
