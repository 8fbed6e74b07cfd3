use thiserror::Error;

/// Errors produced by matroid construction and invariant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid linear space: flats {first:?} and {second:?} share {shared} elements")]
    InvalidLinearSpace {
        first: Vec<usize>,
        second: Vec<usize>,
        shared: usize,
    },
    #[error("not a matroid: {0}")]
    NotAMatroid(String),
    #[error("unsupported projective plane order {0}")]
    UnsupportedOrder(u64),
    #[error("ground set of size {n} exceeds the limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("matroid has loops {0:?}")]
    Loop(Vec<usize>),
    #[error("expected a matroid of rank {expected}, found rank {found}")]
    Rank { expected: usize, found: usize },
    #[error("matroid is not simple")]
    NotSimple,
    #[error("matroid has coloops {0:?}")]
    Coloop(Vec<usize>),
    #[error("expected a weight of dimension {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("{0:?} is not a proper nonempty flat")]
    InvalidFlat(Vec<usize>),
    #[error("weight is not balanced around chain {0:?}")]
    BalancingViolation(Vec<usize>),
    #[error("no divisor combination reproduces the weight of dimension {0}")]
    LiftFailure(usize),
    #[error("invalid Chern exponents {exponents:?} for d = {d}")]
    InvalidExponents { exponents: Vec<usize>, d: usize },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
