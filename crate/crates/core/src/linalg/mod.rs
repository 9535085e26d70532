//! Exact scalars and dense matrices over the rationals or a prime field.

pub(crate) mod elim;
mod matrix;
mod multimodular;
mod scalar;

pub use matrix::ExactMatrix;
pub(crate) use multimodular::multimodular_nullspace;
#[cfg(test)]
pub(crate) use matrix::sparse_integer_nullspace;
pub(crate) use matrix::{sparse_modular_nullspace, sparse_modular_rank};
pub(crate) use scalar::{reduce_bigint, reduce_rational};
pub use scalar::{Field, Scalar, DEFAULT_PRIME};
