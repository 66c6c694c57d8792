use super::basis::CrystalBasis;
use super::lattice::{Tail, TailLaw};
use super::CrystalError;
use crate::linalg::rank;
use crate::rep::{act, divided_f, ker_e, AlgebraGen, Element, ModuleShape, Slot};

/// A `B_q`-linear map between modules without finite-dimensional parts, fixed by the images of
/// the string generators (listed in the order of [`ModuleShape::strings`] of the source).
#[derive(Clone, Debug)]
pub struct BqIso {
    pub source: ModuleShape,
    pub target: ModuleShape,
    pub images: Vec<Element>,
}

impl BqIso {
    pub fn identity(shape: &ModuleShape) -> Self {
        let images = shape.strings().iter().map(|&(c, t)| Element::basis(Slot::new(c, t, 0))).collect();
        BqIso { source: shape.clone(), target: shape.clone(), images }
    }

    pub fn apply_slot(&self, s: Slot) -> Element {
        let i = self.source.strings().iter().position(|&x| x == (s.component, s.tag)).unwrap();
        divided_f(&self.images[i], &self.target, s.k).expect("image inside the target")
    }

    pub fn apply(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (s, c) in x.terms() {
            out = out.add(&self.apply_slot(*s).scale(c));
        }
        out
    }

    /// Checks weights, `e' (image) = 0`, and invertibility on weights `>= floor`.
    pub fn validate(&self, floor: i64) -> Result<(), CrystalError> {
        let bad = |m: String| Err(CrystalError::NotAnIsomorphism(m));
        if self.images.len() != self.source.strings().len() {
            return bad("one image per string is required".into());
        }
        for (img, &(c, tag)) in self.images.iter().zip(&self.source.strings()) {
            let w = self.source.components[c].top_weight(tag);
            if img.weight(&self.target) != Some(w) {
                return bad(format!("image of generator ({c}, {tag}) is not a vector of weight {w}"));
            }
            if !act(AlgebraGen::EPrime, img, &self.target)?.is_zero() {
                return bad(format!("image of generator ({c}, {tag}) is not killed by e'"));
            }
        }
        let top = self.source.max_weight().unwrap_or(0).max(self.target.max_weight().unwrap_or(0));
        for w in floor..=top {
            let src = self.source.weight_slots(w);
            let dst = self.target.weight_slots(w);
            if src.len() != dst.len() {
                return bad(format!("weight {w} has different dimensions"));
            }
            if src.is_empty() {
                continue;
            }
            let cols: Vec<Vec<_>> = src.iter().map(|s| self.apply_slot(*s).coords(&dst)).collect();
            let m = (0..dst.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
            if rank(m, src.len()) != src.len() {
                return bad(format!("not invertible in weight {w}"));
            }
        }
        Ok(())
    }

    /// Whether the map also carries `Ker e` onto `Ker e` on weights `>= floor`.
    pub fn preserves_ker_e(&self, floor: i64) -> Result<bool, CrystalError> {
        let top = self.source.max_weight().unwrap_or(0);
        for w in floor..=top {
            let k1 = ker_e(&self.source, w)?;
            let k2 = ker_e(&self.target, w)?;
            if k1.len() != k2.len() {
                return Ok(false);
            }
            for x in k1 {
                if !act(AlgebraGen::E, &self.apply(&x), &self.target)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Laws below the window: a generator sent to a multiple of a generator moves its law,
    /// anything else leaves the target strings without a closed form.
    fn transport_tails(&self, tails: &[Tail], reps: &[Option<TailLaw>]) -> (Vec<Tail>, Vec<Option<TailLaw>>) {
        let tstrings = self.target.strings();
        let mut out = vec![Tail::Zero; tstrings.len()];
        let mut out_reps = vec![None; tstrings.len()];
        for (i, img) in self.images.iter().enumerate() {
            let single = img.len() == 1 && img.slots().next().unwrap().k == 0;
            if single {
                let (s, c) = img.terms().next().unwrap();
                let j = tstrings.iter().position(|&x| x == (s.component, s.tag)).unwrap();
                let (ord, unit) = c.split_unit().unwrap();
                let shift = |l: &TailLaw| TailLaw { a: l.a, b: l.b + ord, unit: &l.unit * &unit };
                out[j] = match &tails[i] {
                    Tail::Monomial(l) => Tail::Monomial(shift(l)),
                    other => other.clone(),
                };
                out_reps[j] = reps[i].as_ref().map(shift);
            } else {
                for s in img.slots() {
                    let j = tstrings.iter().position(|&x| x == (s.component, s.tag)).unwrap();
                    out[j] = Tail::Windowed;
                }
            }
        }
        (out, out_reps)
    }
}

/// Result of moving a crystal basis along an isomorphism.
#[derive(Clone, Debug)]
pub struct Transported {
    pub basis: CrystalBasis,
    /// The map also preserves `Ker e`, which makes it a strong isomorphism.
    pub strong: bool,
}

pub fn transport_basis(iso: &BqIso, cb: &CrystalBasis) -> Result<Transported, CrystalError> {
    if iso.source != *cb.shape() {
        return Err(CrystalError::ShapeMismatch);
    }
    let floor = cb.lattice.floor();
    iso.validate(floor)?;
    let (tails, tail_reps) = iso.transport_tails(cb.lattice.tails(), &cb.tail_reps);
    let lattice = cb.lattice.map(&iso.target, |s| iso.apply_slot(s), tails)?;
    let reps = cb.reps.iter().map(|r| iso.apply(r)).collect();
    Ok(Transported { basis: CrystalBasis::new(lattice, reps, tail_reps)?, strong: iso.preserves_ker_e(floor)? })
}
