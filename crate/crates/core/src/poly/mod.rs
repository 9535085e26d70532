//! Sparse bivariate polynomials, their text syntax, and parametrizations.

mod parser;
mod polynomial;

pub use parser::parse_polynomial;
pub use polynomial::{BivariatePolynomial, Parametrization};
