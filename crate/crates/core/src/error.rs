use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system {family}{rank}")]
    InvalidRootSystem { family: char, rank: usize },

    #[error("cannot parse root system name `{0}`")]
    BadRootSystemName(String),

    #[error("Weyl group of {name} exceeds the configured cap of {cap} elements")]
    WeylGroupTooLarge { name: String, cap: usize },

    #[error("weight {0:?} has length {1}, expected {2}")]
    RankMismatch(Vec<i64>, usize, usize),

    #[error("weight {0:?} is not regular")]
    NotRegular(Vec<i64>),

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("simple root {0} is not a corner root of {1}")]
    NotCorner(usize, String),

    #[error("index {0} out of range for rank {1}")]
    IndexOutOfRange(usize, usize),

    #[error("operands belong to different root systems ({0} vs {1})")]
    MismatchedRootSystems(String, String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("exact division left a remainder: {0}")]
    InexactDivision(String),

    #[error("negative multiplicity {1} for weight {0:?} while peeling a character")]
    NegativeMultiplicity(Vec<i64>, String),

    #[error("ambient coordinates are only available for type A (got {0})")]
    NoAmbientBasis(String),

    #[error("polynomial is not homogeneous in the ambient coordinates")]
    NotHomogeneous,

    #[error("polynomial is not squarefree")]
    NotSquarefree,

    #[error("total degree {degree} exceeds the bound {bound}")]
    DegreeBoundExceeded { degree: usize, bound: usize },

    #[error("input is a unit")]
    UnitInput,

    #[error("bivariate specializations disagree after {attempts} attempts: {counts:?}")]
    SpecializationsDisagree { attempts: usize, counts: Vec<usize> },

    #[error("no admissible specialization found after {0} attempts")]
    NoAdmissibleSpecialization(usize),

    #[error("divisors {0:?} are not pairwise coprime divisors of {1}")]
    BadCyclotomicDivisors(Vec<u64>, u64),

    #[error("invalid obstruction parameters e={e} f={f} d={d}: {reason}")]
    BadObstructionParams { e: u64, f: u64, d: u64, reason: String },

    #[error("conductor {0} exceeds the cap {1}")]
    ConductorCap(u64, u64),

    #[error("internal arithmetic error: {0}")]
    Internal(String),

    #[error("{0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
