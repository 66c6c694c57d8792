use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::DecompError;
use crate::linalg::{identity, inverse, mat_mul, mat_vec, Matrix};
use crate::qq::RatFunc;
use crate::rep::{act, divided_f, AlgebraGen, Element, ModuleShape, RepError, Slot};

/// A module given in a basis other than the canonical one.
///
/// The presented vector with coordinates `y` in weight `w` is the canonical vector `P_w y`.
/// Weights without an entry in `twists` use the identity. Every operator acts as
/// `P^-1 g P`, so elements handed to and returned from this type are coordinate vectors in the
/// presented basis, written over the slots of `base`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedPresentation {
    pub base: ModuleShape,
    #[serde(default)]
    pub twists: BTreeMap<i64, Matrix>,
}

impl TwistedPresentation {
    pub fn identity(base: ModuleShape) -> Self {
        TwistedPresentation { base, twists: BTreeMap::new() }
    }

    pub fn with_twist(mut self, weight: i64, change: Matrix) -> Self {
        self.twists.insert(weight, change);
        self
    }

    /// Size and invertibility of every change of basis.
    pub fn validate(&self) -> Result<(), DecompError> {
        if let Some(i) = self.base.components.iter().position(|c| c.is_findim()) {
            return Err(RepError::FinDimPresent(i).into());
        }
        for (w, p) in &self.twists {
            let d = self.base.weight_slots(*w).len();
            if p.len() != d || p.iter().any(|row| row.len() != d) {
                return Err(DecompError::Invalid(format!("change of basis at weight {w} must be {d} x {d}")));
            }
            if inverse(p).is_none() {
                return Err(DecompError::Invalid(format!("change of basis at weight {w} is singular")));
            }
        }
        Ok(())
    }

    pub fn slots(&self, w: i64) -> Vec<Slot> {
        self.base.weight_slots(w)
    }

    /// Lowest weight touched by a twist.
    pub fn support_floor(&self) -> Option<i64> {
        self.twists.keys().next().copied()
    }

    fn change(&self, w: i64) -> Matrix {
        self.twists.get(&w).cloned().unwrap_or_else(|| identity(self.slots(w).len()))
    }

    fn change_inverse(&self, w: i64) -> Result<Matrix, DecompError> {
        match self.twists.get(&w) {
            Some(p) => inverse(p).ok_or_else(|| DecompError::Invalid(format!("change of basis at weight {w} is singular"))),
            None => Ok(identity(self.slots(w).len())),
        }
    }

    fn by_weight(&self, x: &Element) -> Result<BTreeMap<i64, Element>, DecompError> {
        let mut out: BTreeMap<i64, Element> = BTreeMap::new();
        for (s, c) in x.terms() {
            let w = self.base.component(s.component)?.slot_weight(s.tag, s.k);
            out.entry(w).or_default().add_term(*s, c.clone());
        }
        Ok(out)
    }

    /// Canonical vector of a presented one.
    pub fn to_base(&self, x: &Element) -> Result<Element, DecompError> {
        let mut out = Element::zero();
        for (w, part) in self.by_weight(x)? {
            let slots = self.slots(w);
            out = out.add(&Element::from_coords(&slots, &mat_vec(&self.change(w), &part.coords(&slots))));
        }
        Ok(out)
    }

    /// Presented coordinates of a canonical vector.
    pub fn from_base(&self, x: &Element) -> Result<Element, DecompError> {
        let mut out = Element::zero();
        for (w, part) in self.by_weight(x)? {
            let slots = self.slots(w);
            out = out.add(&Element::from_coords(&slots, &mat_vec(&self.change_inverse(w)?, &part.coords(&slots))));
        }
        Ok(out)
    }

    /// Conjugated action of a map defined on canonical vectors.
    pub fn apply(&self, x: &Element, f: impl Fn(&Element) -> Result<Element, RepError>) -> Result<Element, DecompError> {
        self.from_base(&f(&self.to_base(x)?)?)
    }

    pub fn act(&self, g: AlgebraGen, x: &Element) -> Result<Element, DecompError> {
        self.apply(x, |y| act(g, y, &self.base))
    }

    pub fn divided_f(&self, x: &Element, j: u64) -> Result<Element, DecompError> {
        self.apply(x, |y| divided_f(y, &self.base, j))
    }

    /// Matrix of a weight-shifting map `M_w -> M_{w + shift}` in presented coordinates, rows
    /// indexed by target slots.
    pub fn matrix(
        &self,
        w: i64,
        shift: i64,
        f: impl Fn(&Element) -> Result<Element, RepError>,
    ) -> Result<Matrix, DecompError> {
        let src = self.slots(w);
        let dst = self.slots(w + shift);
        let images: Vec<Element> = src.iter().map(|s| f(&Element::basis(*s))).collect::<Result<_, _>>()?;
        let base: Matrix = dst.iter().map(|d| images.iter().map(|im| im.coeff(d)).collect()).collect();
        let right = mat_mul(&base, &self.change(w), src.len());
        Ok(mat_mul(&self.change_inverse(w + shift)?, &right, src.len()))
    }

    pub fn operator(&self, g: AlgebraGen, w: i64) -> Result<Matrix, DecompError> {
        self.matrix(w, crate::rep::weight_shift(g), |x| act(g, x, &self.base))
    }

    pub fn vector(&self, w: i64, x: &Element) -> Vec<RatFunc> {
        x.coords(&self.slots(w))
    }
}
