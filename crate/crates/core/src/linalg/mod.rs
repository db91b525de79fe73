//! Exact linear algebra: matrices over GF(q), and integer matrices with
//! rank, null space and characteristic polynomial computations.

mod field_matrix;
mod integer;
mod modular;

use thiserror::Error;

pub use field_matrix::FieldMatrix;
pub use integer::{
    certified_kernel, char_poly, int_kernel_basis, int_rank, poly_divides, primitive, IntMatrix,
    IntPolynomial,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("rows have different lengths")]
    Ragged,
    #[error("entry {0} is not a field element")]
    BadEntry(u64),
    #[error("matrix is not square")]
    NotSquare,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
}
