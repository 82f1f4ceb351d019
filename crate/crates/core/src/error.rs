//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division is not exact (remainder {remainder})")]
    InexactDivision { remainder: String },
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("Cartan matrix is not of finite type: positive-root closure exceeded {bound} roots")]
    NotFiniteType { bound: usize },
    #[error("unsupported root system: {0}")]
    Unsupported(String),
    #[error("weight has {got} coordinates but the rank is {expected}")]
    WeightLength { expected: usize, got: usize },
    #[error("Weyl group enumeration refused: rank {rank}, estimated order {estimate}, cap {cap}")]
    WeylTooLarge { rank: usize, estimate: String, cap: usize },
    #[error("subset enumeration over {size} roots exceeds the limit of {limit}")]
    SubsetTooLarge { size: usize, limit: usize },
    #[error("level {level} is out of range 1..={max}")]
    InvalidLevel { level: usize, max: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search exceeded the node cap of {cap}")]
    NodeCapExceeded { cap: u64 },
}
