//! Exact linear algebra over `Q(q)` and over its valuation ring at `q = 0`.

pub mod dvr;
pub mod field;

pub use field::{columns_to_matrix, identity, intersect_spans, inverse, mat_mul, mat_vec, nullspace, rank, rref, solve, Matrix};
