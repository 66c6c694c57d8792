//! Lattices over the local ring at `q = 0`, crystal lattices and crystal bases.

mod basis;
mod dot;
mod lattice;
mod transport;

pub use basis::{sense_of, verify_crystal_basis, verify_crystal_lattice, BasisReport, Check, Class, CrystalBasis, LatticeReport, RepId, Sense};
pub use dot::to_dot;
pub use lattice::{window_floor, Lattice, Tail, TailLaw};
pub use transport::{transport_basis, BqIso, Transported};

use crate::linalg::dvr::DvrBasis;
use crate::rep::{Element, ModuleShape, RepError, Slot};

/// Window used when none is given: enough room for constructions with parameter `n`.
pub fn default_window(n: u64) -> u64 {
    25.max(3 * n + 10)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CrystalError {
    #[error("weight {0} lies outside the explicit window")]
    WindowExceeded(i64),
    #[error("elements do not share a single weight")]
    MixedWeights,
    #[error("lattices live in different modules")]
    ShapeMismatch,
    #[error("finite-dimensional and B_q components cannot be mixed here")]
    MixedSense,
    #[error("lattice is not contained in the other")]
    NotContained,
    #[error("not an isomorphism: {0}")]
    NotAnIsomorphism(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// Echelon basis over `A` of the span of weight vectors of one weight.
pub fn dvr_reduce(gens: &[Element], shape: &ModuleShape) -> Result<Vec<Element>, CrystalError> {
    let nonzero: Vec<&Element> = gens.iter().filter(|g| !g.is_zero()).collect();
    let Some(first) = nonzero.first() else { return Ok(Vec::new()) };
    let w = first.weight(shape).ok_or(CrystalError::MixedWeights)?;
    if nonzero.iter().any(|g| g.weight(shape) != Some(w)) {
        return Err(CrystalError::MixedWeights);
    }
    let slots = shape.weight_slots(w);
    let rows: Vec<_> = nonzero.iter().map(|g| g.coords(&slots)).collect();
    let b = DvrBasis::from_generators(&rows, slots.len());
    Ok(b.rows.iter().map(|r| Element::from_coords(&slots, r)).collect())
}

/// Image of `ltilde` in a finite-dimensional quotient, after checking `lcap ⊆ ltilde`.
pub fn quotient_lattice(
    ltilde: &Lattice,
    lcap: &Lattice,
    quotient: &ModuleShape,
    projection: impl Fn(Slot) -> Element,
) -> Result<Lattice, CrystalError> {
    if !ltilde.contains_lattice(lcap)? {
        return Err(CrystalError::NotContained);
    }
    let tails = vec![Tail::Zero; quotient.strings().len()];
    ltilde.map(quotient, projection, tails)
}
