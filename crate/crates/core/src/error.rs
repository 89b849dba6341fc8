use thiserror::Error;

/// Errors raised by tower construction, code construction and the verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field of size {p}^{degree} exceeds the cap of {cap} elements")]
    CapExceeded { p: u64, degree: u32, cap: u64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different field towers")]
    TowerMismatch,
    #[error("invalid levels: {0}")]
    InvalidLevels(String),
    #[error("element does not lie in {0}")]
    NotInLevel(&'static str),
    #[error("polynomial levels differ: {0} vs {1}")]
    LevelMismatch(&'static str, &'static str),
    #[error("{divisor} does not divide {value}")]
    NotADivisor { divisor: u64, value: u64 },
    #[error("gcd({base}, {modulus}) != 1")]
    NotCoprime { base: u64, modulus: u64 },
    #[error("invalid r: {0}")]
    InvalidR(String),
    #[error("invalid exponent set: {0}")]
    InvalidExponents(String),
    #[error("generator matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("word has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("work estimate {needed} exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("unsupported q = {0}: {1}")]
    UnsupportedQ(u64, &'static str),
    #[error("the code has no nonzero codeword")]
    ZeroCode,
    #[error("criterion not applicable: {0}")]
    InvalidRegime(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("shift constants are equal; the intersection formula does not apply")]
    ShiftConstantEqual,
    #[error("locality undefined: dual distance {0} <= 2")]
    LocalityUndefined(usize),
    #[error("m = {0} is not odd")]
    NotOdd(u32),
    #[error("operation not supported for this code: {0}")]
    Unsupported(&'static str),
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::CapExceeded { .. } => "CapExceeded",
            Error::NotPrime(_) => "NotPrime",
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::DivisionByZero => "DivisionByZero",
            Error::TowerMismatch => "TowerMismatch",
            Error::InvalidLevels(_) => "InvalidLevels",
            Error::NotInLevel(_) => "NotInLevel",
            Error::LevelMismatch(..) => "LevelMismatch",
            Error::NotADivisor { .. } => "NotADivisor",
            Error::NotCoprime { .. } => "NotCoprime",
            Error::InvalidR(_) => "InvalidR",
            Error::InvalidExponents(_) => "InvalidExponents",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::UnsupportedQ(..) => "UnsupportedQ",
            Error::ZeroCode => "ZeroCode",
            Error::InvalidRegime(_) => "InvalidRegime",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::ShiftConstantEqual => "ShiftConstantEqual",
            Error::LocalityUndefined(_) => "LocalityUndefined",
            Error::NotOdd(_) => "NotOdd",
            Error::Unsupported(_) => "Unsupported",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
