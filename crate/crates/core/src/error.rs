use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty numeral")]
    EmptyInput,

    #[error("invalid digit {character:?} at position {position}")]
    InvalidDigit { position: usize, character: char },

    #[error("base {0} is outside the supported range 2..=36")]
    InvalidBase(u32),

    #[error("divisor must be at least 2, got {0}")]
    InvalidDivisor(u64),

    #[error("the divisor multiple N must be nonzero")]
    ZeroMultiple,

    #[error("cannot split a negative value; split its magnitude instead")]
    NegativeInput,

    #[error("numeral is in base {found} but the parameters are for base {expected}")]
    BaseMismatch { expected: u32, found: u32 },

    #[error("invalid parameter set: {0}")]
    InvalidParameters(String),

    #[error("no candidate parameter set is sound for n = {divisor} in base {base}")]
    NoSoundCandidate { divisor: u64, base: u32 },

    #[error("no sound criterion available: {0}")]
    NoSoundCriterion(String),

    #[error("arithmetic overflow while {0}")]
    Overflow(&'static str),
}
