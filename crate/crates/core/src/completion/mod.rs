//! Completions of modules and of their crystal lattices.

mod deodhar;
mod lattices;

pub use deodhar::{deodhar_normalize, in_completion, m0_to_completion, negative_divided_product, DeodharSymbol};
pub use lattices::{
    complete_lattice, complete_verma_lattice, embed_lattice, is_complete_lattice, kernel_dimensions_match,
    lowered_coefficient, delta_root_inverse, quotient_shape, reduced_generator_lattice, rescale_factor, full_span_lattice,
    rescaled_completion_lattice, verify_lattice_completion, CompletedBasis, CompletionReport,
};

use crate::crystal::CrystalError;
use crate::rep::RepError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CompletionError {
    #[error("symbol is not a weight vector")]
    NotWeightVector,
    #[error("input is not a standard crystal basis")]
    NotStandard,
    #[error("lattices do not match the completion data")]
    ShapeMismatch,
    #[error(transparent)]
    Crystal(#[from] CrystalError),
    #[error(transparent)]
    Rep(#[from] RepError),
}
