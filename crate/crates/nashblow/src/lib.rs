//! Exact commutative-algebra toolkit for affine varieties carrying a
//! foliation by vector fields, built around one construction: the
//! ideal generated by all maximal minors of the matrix pairing
//! generators of an ideal with their derivatives along the foliation.
//! On top of the construction sit decision procedures for the
//! inclusion and equality laws it satisfies, a divisibility test on
//! fractional ideals, and the iterated chain whose stabilization
//! certifies a resolution step.
//!
//! All arithmetic is exact over the rationals; every answer is a
//! theorem about the input, not a numerical observation.

pub mod arith;
pub mod checks;
pub mod cli;
pub mod error;
pub mod groebner;
pub mod jideal;
pub mod problem;
pub mod variety;

pub use error::{Error, Result};
