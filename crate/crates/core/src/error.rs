use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring of size {size} refused: tabulation limit is {limit}")]
    RingTooLarge { size: u128, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("element sets belong to different rings")]
    RingMismatch,

    #[error("generator index {index} out of range for {count} generators")]
    IndexOutOfRange { index: usize, count: usize },

    #[error("subgroup has infinite index: no generator has a nonzero entry in column {column}")]
    InfiniteIndex { column: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{p} is not congruent to -1 modulo {modulus}")]
    NotMinusOne { p: u64, modulus: u64 },

    #[error("no prime congruent to -1 modulo {modulus} among the first {cap} candidates")]
    PrimeSearchExhausted { modulus: u64, cap: u64 },

    #[error("the set is empty")]
    EmptySet,

    #[error("the set is not generic within {cap} translates")]
    NotGeneric { cap: usize },

    #[error("polynomial has a nonzero constant term and is not an element of XZ[X]")]
    NotInXZ,

    #[error("integer overflow during {0}")]
    Overflow(&'static str),

    #[error("the set is not an additive subgroup")]
    NotSubgroup,

    #[error("the set is not closed under the ring operations")]
    NotSubring,
}
