//! Toolkit for the moment method on dilute Wigner matrices.

pub mod catalan;
pub mod cli;
pub mod error;
pub mod oracle;
pub mod report;
pub mod sim;
pub mod verify;
pub mod walks;

pub use error::{Error, Result};

/// Arbitrary-precision integer used for all counts.
pub type ExactInt = num_bigint::BigInt;
/// Arbitrary-precision rational used for exact moments.
pub type ExactRational = num_rational::BigRational;
