use thiserror::Error;

/// Errors produced by the solver library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid system size {sites}: {reason}")]
    InvalidSize { sites: usize, reason: &'static str },

    #[error("block with {mediators} mediators does not fit on a ring of {sites} sites")]
    BlockTooLong { mediators: usize, sites: usize },

    #[error("parameter `{name}` is not finite ({value})")]
    NonFinite { name: &'static str, value: f64 },

    #[error("requested {requested} levels but the sector only has {available} states")]
    TooManyLevels { requested: usize, available: u128 },

    #[error("the ground state is not the even-sector vacuum; closed-form overlaps do not apply")]
    NotEvenVacuum,

    #[error("{operation} requires an even number of sites, got {sites}")]
    OddSites { operation: &'static str, sites: usize },

    #[error("size guard: {operation} supports at most {max} sites, got {sites}")]
    SizeGuard {
        operation: &'static str,
        sites: usize,
        max: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("grid must be strictly increasing with uniform spacing: {0}")]
    NonUniformGrid(&'static str),

    #[error("quadrature failed to converge: estimated error {error:e} exceeds tolerance {tolerance:e}")]
    Quadrature { error: f64, tolerance: f64 },

    #[error("invalid ansatz: {0}")]
    InvalidAnsatz(&'static str),

    #[error("invalid model definition: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
