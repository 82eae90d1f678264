//! Randomized tests for generic local and global rigidity of graphs in
//! d-dimensional Euclidean space, with exact linear algebra over prime fields
//! and an exact-rational cross-check.
//!
//! The elimination core in [`linalg`] is generic over a [`Field`]; the
//! aliases below fix the two fields the rigidity engine uses.

pub mod batch;
pub mod config;
pub mod connectivity;
pub mod engine;
pub mod graph;
pub mod linalg;
pub mod primes;
pub mod report;
pub mod rng;
pub mod scalar;

use num_rational::BigRational;

pub use config::{Mode, ReportFormat, TestConfig};
pub use graph::{generate, Family, Graph};
pub use linalg::{LinalgError, Matrix};
pub use scalar::{Field, NumField, PrimeField};

/// The rationals with arbitrary-precision numerator and denominator.
pub type Rationals = NumField<BigRational>;
pub type FpMatrix = Matrix<PrimeField>;
pub type RatMatrix = Matrix<Rationals>;
