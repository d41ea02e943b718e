//! Dense complex linear algebra kernel: matrices, Kronecker and direct-sum
//! composition, partial transpose/trace, Jacobi SVD and Hermitian eigensolver.

mod eig;
mod matrix;
mod ops;
mod svd;

pub use eig::{diagonalize_normal, hermitian_eigs, null_space, HermitianEigen, NormalDiagonalization, HERMITIAN_TOL};
pub use matrix::{orthonormalize, vec_inner, vec_norm, ComplexMatrix, C64, NORMAL_TOL, ONE, ZERO};
pub use ops::{
    direct_sum, partial_trace_first, partial_trace_second, partial_transpose, singular_values, tensor,
    SpectralSummary,
};
pub use svd::{singular_values_all, svd, Svd};
