//! Dimensions and defects of secant and Grassmann-secant varieties of
//! Veronese varieties, computed with randomized Terracini rank tests over
//! exact domains.

pub mod certificates;
pub mod error;
pub mod field;
pub mod interpolation;
pub mod matrix;
pub mod poly;
pub mod random;
pub mod terracini;
pub mod varieties;

pub use error::{Error, Result};
pub use field::{ArithmeticDomain, Field, PrimeField, Rationals};
pub use matrix::DenseMatrix;
pub use random::RandomSource;
