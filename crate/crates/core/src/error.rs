use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field size {0}: expected a prime power >= 2")]
    InvalidFieldSize(u64),

    #[error("modulus must be odd, got {0}")]
    EvenModulus(u64),

    #[error("n = {n} exceeds the {what} ceiling of {max}")]
    Ceiling {
        what: &'static str,
        n: usize,
        max: usize,
    },

    #[error("n = {n} is below the minimum of {min} for {what}")]
    BelowMinimum {
        what: &'static str,
        n: usize,
        min: usize,
    },

    #[error("invalid cycle type: {0}")]
    InvalidCycleType(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("dimension {d} out of range 0..={n}")]
    DimensionOutOfRange { n: usize, d: i64 },

    #[error("Burnside sum for n = {0} is not divisible by n!")]
    NotDivisible(usize),

    #[error("factor cache: {0}")]
    Cache(String),
}
