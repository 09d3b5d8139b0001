//! Exact rational dense linear algebra.
//!
//! Everything downstream (derivation algebras, homomorphism classification,
//! the first-order derivation solver) reduces to rank / nullspace / span
//! questions over ℚ, answered here with zero tolerance.
//!
//! Elimination is deterministic: pivots are chosen as the first nonzero
//! entry in column order and the reduced row echelon form is canonical, so
//! the same input always yields the same nullspace basis.

mod dense;
mod scalar;
mod sparse;

pub use dense::DenseMatrix;
pub use scalar::ExactScalar;
pub use sparse::{RowReducer, SparseRow};

use alloc::string::String;

/// Errors from linear-algebra operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinError {
    /// Operand shapes are incompatible.
    DimensionMismatch { expected: usize, found: usize },
    /// Parsing a `"p/q"` literal failed.
    ParseError(String),
    /// Division by zero or inverting a singular value.
    DivisionByZero,
}

impl core::fmt::Display for LinError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LinError::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            LinError::ParseError(s) => write!(f, "invalid rational literal: {s}"),
            LinError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}
