//! Exact linear algebra over QQ and prime fields.

mod echelon;
mod matrix;
mod scalar;

pub use echelon::{kernel_basis, rank, solve, Echelon, Quotient, Subspace};
pub use matrix::{Matrix, SparseVec};
pub use scalar::{sign, FieldSpec, Scalar};
pub(crate) use scalar::rational_is_negative;
