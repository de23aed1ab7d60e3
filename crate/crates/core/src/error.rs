use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too small (need p > 3)")]
    PrimeTooSmall(u64),
    #[error("prime {0} exceeds the table cap 2^20")]
    PrimeTooLarge(u64),
    #[error("index {n} does not divide p - 1 = {p_minus_one}")]
    IndexDoesNotDivide { n: u32, p_minus_one: u32 },
    #[error("residue {x} out of range for modulus {p}")]
    ResidueOutOfRange { x: u64, p: u32 },
    #[error("digamma argument {a}/{q} outside (0, 1)")]
    OutOfRange { a: u64, q: u64 },
    #[error("L(1, chi) diverges for a principal character")]
    PrincipalCharacter,
    #[error("modulus {0} exceeds 2^23")]
    ModulusTooLarge(u64),
    #[error("closed form not available for this character parity")]
    UnsupportedParity,
    #[error("closed form not available for a custom interval")]
    UnsupportedInterval,
    #[error("invalid interval [{lo}, {hi}) mod {p}")]
    InvalidInterval { lo: u32, hi: u32, p: u32 },
    #[error("set is empty")]
    EmptySet,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("0 is not allowed in the set")]
    ZeroInSet,
    #[error("unsupported arity k = {0} (expected 2 or 3)")]
    UnsupportedArity(u32),
    #[error("set of size {size} exceeds exact-search cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("character is odd; an even character is required")]
    OddCharacter,
    #[error("character is not a non-principal member of the dual set")]
    NotInDualSet,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
