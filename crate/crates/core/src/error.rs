use alloc::string::String;
use alloc::vec::Vec;

/// Errors reported by the library.
///
/// `CoverDoesNotExist` and `TorsionObstruction` are mathematical answers
/// rather than failures; callers usually want to tell them apart from the rest.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHom(String),
    #[error("operation needs a finite group")]
    InfiniteGroup,
    #[error("capacity exceeded: group of order {size} is above the bound {bound}")]
    Capacity { size: String, bound: u64 },
    #[error("fan is not complete: {0}")]
    NotComplete(String),
    #[error("cover does not exist: the map Z_d -> G_max is not injective at divisors {divisors:?}")]
    CoverDoesNotExist { divisors: Vec<usize> },
    #[error("class group has {0}-torsion; the building data are not unique")]
    TorsionObstruction(String),
    #[error("the fundamental relations have no solution over this class group: {0}")]
    NoSolution(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("cross-check falsified: {0}")]
    Falsified(String),
}

pub type Result<T> = core::result::Result<T, Error>;
