//! Exact fields, dense and sparse linear algebra, polynomials and jets.

mod field;
mod jet;
mod matrix;
mod poly;
mod subspace;

pub use field::{FieldSpec, Scalar};
pub use jet::JetContext;
pub use matrix::{kernel_dim, rref, Matrix, Rref};
pub use poly::{Monomial, Poly, PolyDisplay};
pub use subspace::{sparse_from_dense, SparseVec, Subspace};
