//! Modules of the category: Verma modules, the modules `T(n)` and finite-dimensional
//! simples, with explicit divided-power bases and operator actions.

mod action;
mod completion;
mod element;
mod shape;
mod weights;

pub use action::{
    act, act_casimir, act_delta, act_word, b_decompose, casimir_value, divided_f, divided_f_slot, kashiwara,
    kashiwara_pow, AlgebraGen, KashiwaraDir,
};
pub use completion::{completion_module, is_complete_module, ComponentEmbedding, ModuleCompletion};
pub use element::{Element, Slot};
pub use shape::{ComponentShape, ModuleShape, Tag};
pub use weights::{ker_e, ker_e_prime, operator_matrix, weight_shift};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("component {0} does not exist")]
    ComponentOutOfRange(usize),
    #[error("slot {0} is not part of the module")]
    BadSlot(Slot),
    #[error("e' is not defined on the finite-dimensional component {0}")]
    EPrimeOnFinDim(usize),
    #[error("component {0} is finite-dimensional, which this operation does not accept")]
    FinDimPresent(usize),
    #[error("{0}")]
    Shape(String),
}
