//! Exact linear algebra over prime fields.
//!
//! Subspaces are kept in reduced row-echelon form so that equality of sets is
//! equality of values.

mod field;
mod matrix;
mod subspace;

pub use field::Field;
pub use matrix::{invert, rank, rref, solve, FieldMatrix};
pub use subspace::{
    complement_indices, eigenspace_one, image, intersect, kernel, preimage, quotient, restrict_map,
    span_sum, Decomposer, Subspace,
};
