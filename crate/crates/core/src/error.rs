use thiserror::Error;

use crate::lattice::Point;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("degenerate support: {0}")]
    DegenerateSupport(String),

    #[error("support point ({}, {}) of f{poly} lies outside the dilated polygon", point.0, point.1)]
    Containment { poly: usize, point: Point },

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("coefficient denominator is divisible by the prime {0}")]
    BadReduction(u64),

    #[error("{0} is not a usable prime modulus (must be prime and below 2^32)")]
    InvalidPrime(u64),

    #[error("matrix has {rows} rows; minor gcd is limited to {limit}")]
    SizeGuard { rows: usize, limit: usize },

    #[error("need at least {needed} sample points, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("only {found} of {wanted} valid sample points after {attempts} attempts")]
    SamplingExhausted {
        wanted: usize,
        found: usize,
        attempts: usize,
    },

    #[error("format error at byte {offset}: {message}")]
    Format { offset: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
