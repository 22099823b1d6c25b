use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Galois index {k} for conductor {conductor}")]
    InvalidGaloisIndex { k: i64, conductor: u32 },
    #[error("no exact {n}-th root of the polynomial exists")]
    RootExtraction { n: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("group too large: closure exceeded {bound} elements")]
    GroupTooLarge { bound: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("non-irreducible character (Frobenius-Schur sum {0})")]
    NonIrreducible(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("unknown twist curve `{0}`")]
    UnknownTwist(String),
    #[error("not redundant: {0}")]
    NotRedundant(String),
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),
    #[error("vector is not a cycle")]
    NotACycle,
    #[error("decomposition failure: {0}")]
    Decomposition(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("automorphism is not in the stabilizer of p: generators {0:?} change their image")]
    NotInStabilizer(Vec<usize>),
    #[error("convention violation: {0}")]
    Convention(String),
    #[error("reducible representation: invariant form space has dimension {0}")]
    Reducible(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
