//! Matrix representations of rational surfaces parametrized over
//! two-dimensional toric varieties.
//!
//! The pipeline runs bottom-up through the modules:
//! [`poly`] parses the four polynomials, [`lattice`] and [`embed`] derive the
//! Newton polygon and a toric embedding, [`syzygy`] solves for the linear
//! syzygies in a chosen degree, and [`repmat`] turns the result into a
//! representation matrix that supports exact membership tests.
//! [`implicitize`] provides an interpolation oracle that does not depend on
//! any of the syzygy machinery.

pub mod embed;
pub mod error;
pub mod forms;
pub mod implicitize;
pub mod job;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod repmat;
pub mod sampling;
pub mod syzygy;

pub use error::{Error, Result};
