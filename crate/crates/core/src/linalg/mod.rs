//! Exact scalars, dense matrices, subspaces in canonical echelon form and
//! univariate polynomials.

mod field;
mod matrix;
mod poly;
mod subspace;

pub use field::{Field, Scalar};
pub use matrix::{
    add_vectors, axpy, is_zero_vector, scale_vector, sub_vectors, unit_vector, zero_vector,
    Matrix, Vector,
};
pub use poly::Poly;
pub use subspace::Subspace;
