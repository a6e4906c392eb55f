use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by the toolkit. `Parse` is a syntax-level failure (the
/// position indexes into the offending input string); everything else is a
/// domain error on structurally valid input.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("group order {order} exceeds the cap of {cap} (raise with --max-order)")]
    OrderCap { order: u64, cap: u64 },
    #[error("{0} is not a prime number")]
    NotPrime(u64),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("operands belong to different subgroup lattices")]
    LatticeMismatch,
    #[error("invalid class index {0}")]
    InvalidClass(usize),
    #[error("class count {count} exceeds the exhaustive enumeration bound {bound}")]
    ClassBound { count: usize, bound: usize },
    #[error("ghost vector is not integral over the mark basis: {0}")]
    NonIntegral(String),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("chain is not realized by nested representatives")]
    NotNested,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("subgroup has no finite Weyl group: {0}")]
    InfiniteWeyl(String),
    #[error("embedding mismatch: {0}")]
    EmbeddingMismatch(String),
    #[error("internal error: {0}")]
    Internal(String),
}
