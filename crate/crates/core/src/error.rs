use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("{value} does not divide {modulus}")]
    NotADivisor { value: u64, modulus: u64 },

    #[error("{value} is not an element of the lattice")]
    NotInLattice { value: u64 },

    #[error("not a lattice: {0}")]
    InvalidLattice(String),

    #[error("instance too large: {what} = {value} exceeds bound {bound}")]
    TooLarge {
        what: &'static str,
        value: u64,
        bound: u64,
    },

    #[error("not rational: {0}")]
    NotRational(String),

    #[error("invalid weighted poset: {0}")]
    InvalidPoset(String),

    #[error("node set {0:?} is not ancestral")]
    NotAncestral(Vec<usize>),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("not a Schur ring: {0}")]
    InvalidSchurRing(String),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("crested product: {d} is not in the second lattice")]
    CrestedNotMember { d: u64 },

    #[error("crested product: gcd({n1}, {n2}/{d}) = {g} is not 1")]
    CrestedNotCoprime { n1: u64, n2: u64, d: u64, g: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Inconsistency(_) => 1,
            Error::TooLarge { .. } => 3,
            _ => 2,
        }
    }
}
