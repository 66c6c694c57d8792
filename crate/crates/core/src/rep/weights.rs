use super::{act, AlgebraGen, Element, ModuleShape, RepError, Slot};
use crate::linalg::{nullspace, Matrix};

/// Weight shift of a generator.
pub fn weight_shift(g: AlgebraGen) -> i64 {
    match g {
        AlgebraGen::E | AlgebraGen::EPrime => 2,
        AlgebraGen::F => -2,
        AlgebraGen::T | AlgebraGen::TInv => 0,
    }
}

/// Matrix of `g : M_w -> M_{w + shift}` in slot coordinates, rows indexed by target slots.
pub fn operator_matrix(
    g: AlgebraGen,
    shape: &ModuleShape,
    w: i64,
) -> Result<(Vec<Slot>, Vec<Slot>, Matrix), RepError> {
    let src = shape.weight_slots(w);
    let dst = shape.weight_slots(w + weight_shift(g));
    let images: Vec<Element> =
        src.iter().map(|s| act(g, &Element::basis(*s), shape)).collect::<Result<_, _>>()?;
    let m = dst.iter().map(|d| images.iter().map(|im| im.coeff(d)).collect()).collect();
    Ok((src, dst, m))
}

fn kernel(g: AlgebraGen, shape: &ModuleShape, w: i64) -> Result<Vec<Element>, RepError> {
    let (src, _, m) = operator_matrix(g, shape, w)?;
    Ok(nullspace(m, src.len()).iter().map(|v| Element::from_coords(&src, v)).collect())
}

/// Basis of `Ker e` inside the weight space `M_w`.
pub fn ker_e(shape: &ModuleShape, w: i64) -> Result<Vec<Element>, RepError> {
    kernel(AlgebraGen::E, shape, w)
}

/// Basis of `Ker e'` inside `M_w`.
pub fn ker_e_prime(shape: &ModuleShape, w: i64) -> Result<Vec<Element>, RepError> {
    if let Some(i) = shape.components.iter().position(|c| c.is_findim()) {
        return Err(RepError::EPrimeOnFinDim(i));
    }
    kernel(AlgebraGen::EPrime, shape, w)
}
