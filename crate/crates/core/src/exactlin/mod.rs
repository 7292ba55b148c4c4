//! Exact rational linear algebra: dense matrices, fraction-free kernels and
//! ranks, Kronecker products and the matrix-free Kronecker operator.

mod elim;
mod kron;
mod matrix;

pub use elim::SpanBasis;
pub use kron::{kron_apply, KronMode, KronSumOperator};
pub use matrix::{
    commutator, is_zero_vector, kernel_basis, kron, mat_mul, normalize_leading, Matrix, Vector,
};
