use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::lattice::{Lattice, Tail, TailLaw};
use super::CrystalError;
use crate::linalg::dvr::mod_q_rank;
use crate::qq::RatFunc;
use crate::rep::{kashiwara, Element, KashiwaraDir, ModuleShape, Slot};

/// Which axioms apply: modules with a `B_q`-structure, or finite-dimensional modules where the
/// operators come from the `sl2`-string decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    Bq,
    Integrable,
}

pub fn sense_of(shape: &ModuleShape) -> Result<Sense, CrystalError> {
    let fin = shape.components.iter().filter(|c| c.is_findim()).count();
    match fin {
        0 => Ok(Sense::Bq),
        x if x == shape.len() => Ok(Sense::Integrable),
        _ => Err(CrystalError::MixedSense),
    }
}

/// One verified condition with an optional witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Element>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn ok() -> Self {
        Check { pass: true, witness: None, detail: None }
    }

    pub fn fail(witness: Option<Element>, detail: impl Into<String>) -> Self {
        Check { pass: false, witness, detail: Some(detail.into()) }
    }

    pub fn from_bool(pass: bool, detail: impl Into<String>) -> Self {
        if pass {
            Check::ok()
        } else {
            Check::fail(None, detail)
        }
    }

    /// Keeps the first failure.
    fn absorb(&mut self, other: Check) {
        if self.pass && !other.pass {
            *self = other;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub sense: Sense,
    pub spans: Check,
    pub e_stable: Check,
    pub f_stable: Check,
    /// Set when some string has no closed-form tail, so only the explicit region was examined.
    pub window_only: bool,
}

impl LatticeReport {
    pub fn pass(&self) -> bool {
        self.spans.pass && self.e_stable.pass && self.f_stable.pass
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisReport {
    pub lattice: LatticeReport,
    pub basis_mod_q: Check,
    pub e_closed: Check,
    pub f_closed: Check,
    /// `b = f~ e~ b` when `e~ b` is in the basis, or the pairing `f~ b = b'` iff `b = e~ b'` for
    /// finite-dimensional modules.
    pub string_rule: Check,
}

impl BasisReport {
    pub fn pass(&self) -> bool {
        self.lattice.pass() && self.basis_mod_q.pass && self.e_closed.pass && self.f_closed.pass && self.string_rule.pass
    }
}

fn stability(l: &Lattice, dir: KashiwaraDir) -> Result<Check, CrystalError> {
    let shape = l.shape();
    let mut weights: Vec<i64> = l.weights().collect();
    if dir == KashiwaraDir::ETilde {
        // one step below the window feeds back into it
        weights.extend([l.floor() - 1, l.floor() - 2]);
    }
    for w in weights {
        let space = match l.basis_at(w) {
            Ok(s) => s,
            Err(CrystalError::WindowExceeded(_)) => continue,
            Err(e) => return Err(e),
        };
        for x in space {
            let y = kashiwara(dir, &x, shape)?;
            match l.contains(&y) {
                Ok(true) => {}
                Ok(false) => return Ok(Check::fail(Some(x), format!("{dir:?} leaves the lattice"))),
                Err(CrystalError::WindowExceeded(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    for (i, t) in l.tails().iter().enumerate() {
        if let Tail::Monomial(law) = t {
            let bad = match dir {
                KashiwaraDir::ETilde => law.a < 0,
                KashiwaraDir::FTilde => law.a > 0,
            };
            if bad {
                let (c, tag) = shape.strings()[i];
                let k = l.first_tail_k(i) + 1;
                let x = Element::term(Slot::new(c, tag, k as u64), law.coeff_at(k));
                return Ok(Check::fail(Some(x), format!("{dir:?} leaves the lattice along the tail (slope {})", law.a)));
            }
        }
    }
    Ok(Check::ok())
}

pub fn verify_crystal_lattice(l: &Lattice) -> Result<LatticeReport, CrystalError> {
    let shape = l.shape();
    let sense = sense_of(shape)?;
    let mut spans = Check::ok();
    for w in l.weights() {
        let dim = shape.weight_slots(w).len();
        let rank = l.rank_at(w)?;
        if rank != dim {
            spans.absorb(Check::fail(None, format!("rank {rank} in weight {w} of dimension {dim}")));
        }
    }
    for (i, t) in l.tails().iter().enumerate() {
        let (c, _) = shape.strings()[i];
        if matches!(t, Tail::Zero) && !shape.components[c].is_findim() {
            spans.absorb(Check::fail(None, format!("string {i} is missing below the window")));
        }
    }
    Ok(LatticeReport {
        sense,
        spans,
        e_stable: stability(l, KashiwaraDir::ETilde)?,
        f_stable: stability(l, KashiwaraDir::FTilde)?,
        window_only: l.has_windowed_tail(),
    })
}

/// Identifies a basis class: a stored representative or a slot on a monomial tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RepId {
    Window(usize),
    Tail(usize, u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Class {
    Zero,
    Basis(RepId),
    /// In the lattice but not congruent to a basis element or zero.
    Other,
    NotInLattice,
}

/// A lattice together with representatives of a basis of `L / qL`.
#[derive(Clone, Debug)]
pub struct CrystalBasis {
    pub lattice: Lattice,
    /// Representatives in the explicit region.
    pub reps: Vec<Element>,
    /// Representatives `unit * q^(a k + b) f^(k) g` below the explicit region, per string.
    pub tail_reps: Vec<Option<TailLaw>>,
    by_weight: BTreeMap<i64, Vec<usize>>,
}

impl CrystalBasis {
    pub fn new(lattice: Lattice, reps: Vec<Element>, tail_reps: Vec<Option<TailLaw>>) -> Result<Self, CrystalError> {
        let mut by_weight: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, r) in reps.iter().enumerate() {
            let w = r.weight(lattice.shape()).ok_or(CrystalError::MixedWeights)?;
            by_weight.entry(w).or_default().push(i);
        }
        Ok(CrystalBasis { lattice, reps, tail_reps, by_weight })
    }

    /// The standard basis `{f^(k) g}` of the standard lattice.
    pub fn standard(shape: &ModuleShape, window: u64) -> Self {
        Self::from_diagonal(Lattice::standard(shape, window))
    }

    /// For a diagonal lattice: the normalized generator of each slot.
    pub fn from_diagonal(lattice: Lattice) -> Self {
        let shape = lattice.shape().clone();
        let mut reps = Vec::new();
        for w in lattice.weights() {
            let slots = shape.weight_slots(w);
            for row in lattice.space(w).unwrap().rows {
                reps.push(Element::from_coords(&slots, &row));
            }
        }
        let tail_reps = lattice
            .tails()
            .iter()
            .map(|t| match t {
                Tail::Monomial(l) => Some(l.clone()),
                _ => None,
            })
            .collect();
        Self::new(lattice, reps, tail_reps).unwrap()
    }

    pub fn shape(&self) -> &ModuleShape {
        self.lattice.shape()
    }

    pub fn rep(&self, id: RepId) -> Element {
        match id {
            RepId::Window(i) => self.reps[i].clone(),
            RepId::Tail(s, k) => {
                let (c, tag) = self.shape().strings()[s];
                let law = self.tail_reps[s].as_ref().expect("tail representative");
                Element::term(Slot::new(c, tag, k), law.coeff_at(k as i64))
            }
        }
    }

    /// Representatives in weight `w`.
    pub fn reps_at(&self, w: i64) -> Result<Vec<RepId>, CrystalError> {
        if w >= self.lattice.floor() {
            return Ok(self.by_weight.get(&w).cloned().unwrap_or_default().into_iter().map(RepId::Window).collect());
        }
        let mut out = Vec::new();
        let shape = self.shape();
        for (i, &(c, tag)) in shape.strings().iter().enumerate() {
            let Some(k) = shape.components[c].k_at_weight(tag, w) else { continue };
            match (&self.tail_reps[i], &self.lattice.tails()[i]) {
                (Some(_), _) => out.push(RepId::Tail(i, k)),
                (None, Tail::Zero) => {}
                (None, _) => return Err(CrystalError::WindowExceeded(w)),
            }
        }
        Ok(out)
    }

    /// Class of a weight vector modulo `qL`.
    pub fn classify(&self, x: &Element, w: i64) -> Result<Class, CrystalError> {
        let l = &self.lattice;
        if !l.contains(x)? {
            return Ok(Class::NotInLattice);
        }
        let qinv = RatFunc::q_pow(-1);
        if l.contains(&x.scale(&qinv))? {
            return Ok(Class::Zero);
        }
        for id in self.reps_at(w)? {
            if l.contains(&x.sub(&self.rep(id)).scale(&qinv))? {
                return Ok(Class::Basis(id));
            }
        }
        Ok(Class::Other)
    }

    fn weight_of(&self, id: RepId) -> i64 {
        self.rep(id).weight(self.shape()).unwrap()
    }

    /// `f~`-edges between representatives in the explicit region.
    pub fn edges(&self) -> Result<Vec<(usize, usize)>, CrystalError> {
        let mut out = Vec::new();
        for (i, b) in self.reps.iter().enumerate() {
            let w = self.weight_of(RepId::Window(i));
            if w - 2 < self.lattice.floor() {
                continue;
            }
            let y = kashiwara(KashiwaraDir::FTilde, b, self.shape())?;
            if let Class::Basis(RepId::Window(j)) = self.classify(&y, w - 2)? {
                out.push((i, j));
            }
        }
        Ok(out)
    }
}

pub fn verify_crystal_basis(cb: &CrystalBasis) -> Result<BasisReport, CrystalError> {
    let lattice = verify_crystal_lattice(&cb.lattice)?;
    let sense = lattice.sense;
    let shape = cb.shape();
    let l = &cb.lattice;

    let mut basis_mod_q = Check::ok();
    for w in l.weights() {
        let ids = cb.by_weight.get(&w).cloned().unwrap_or_default();
        let space = l.space(w)?;
        let slots = shape.weight_slots(w);
        if ids.len() != space.rank() {
            basis_mod_q.absorb(Check::fail(None, format!("{} classes for rank {} in weight {w}", ids.len(), space.rank())));
            continue;
        }
        let mut coords = Vec::new();
        for &i in &ids {
            match space.coordinates(&cb.reps[i].coords(&slots)) {
                Some(c) => coords.push(c),
                None => basis_mod_q.absorb(Check::fail(Some(cb.reps[i].clone()), "representative outside the lattice")),
            }
        }
        if coords.len() == ids.len() && mod_q_rank(&coords) != ids.len() {
            basis_mod_q.absorb(Check::fail(None, format!("classes are dependent modulo q in weight {w}")));
        }
    }
    for (i, t) in l.tails().iter().enumerate() {
        let ok = match (t, &cb.tail_reps[i]) {
            (Tail::Monomial(law), Some(r)) => law.a == r.a && law.b == r.b && r.unit.is_unit_a(),
            (Tail::Monomial(_), None) => false,
            (_, _) => true,
        };
        if !ok {
            basis_mod_q.absorb(Check::fail(None, format!("tail representatives of string {i} do not match the lattice")));
        }
    }

    let mut e_closed = Check::ok();
    let mut f_closed = Check::ok();
    let mut string_rule = Check::ok();
    let mut f_images: BTreeMap<RepId, Class> = BTreeMap::new();
    let mut e_images: BTreeMap<RepId, Class> = BTreeMap::new();
    let ids: Vec<RepId> = (0..cb.reps.len()).map(RepId::Window).collect();
    for &id in &ids {
        let b = cb.rep(id);
        let w = cb.weight_of(id);
        let e = kashiwara(KashiwaraDir::ETilde, &b, shape)?;
        let ec = cb.classify(&e, w + 2)?;
        if !matches!(ec, Class::Zero | Class::Basis(_)) {
            e_closed.absorb(Check::fail(Some(b.clone()), format!("e~ b is {ec:?}")));
        }
        e_images.insert(id, ec);
        let f = kashiwara(KashiwaraDir::FTilde, &b, shape)?;
        let fc = match cb.classify(&f, w - 2) {
            Ok(c) => c,
            Err(CrystalError::WindowExceeded(_)) => continue,
            Err(err) => return Err(err),
        };
        let ok = match (sense, &fc) {
            (_, Class::Basis(_)) => true,
            (Sense::Integrable, Class::Zero) => true,
            _ => false,
        };
        if !ok {
            f_closed.absorb(Check::fail(Some(b.clone()), format!("f~ b is {fc:?}")));
        }
        f_images.insert(id, fc);
    }
    match sense {
        Sense::Bq => {
            for (&id, ec) in &e_images {
                if let Class::Basis(target) = ec {
                    let back = kashiwara(KashiwaraDir::FTilde, &cb.rep(*target), shape)?;
                    let c = cb.classify(&back, cb.weight_of(id))?;
                    if c != Class::Basis(id) {
                        string_rule.absorb(Check::fail(Some(cb.rep(id)), "f~ e~ b differs from b"));
                    }
                }
            }
        }
        Sense::Integrable => {
            for (&id, fc) in &f_images {
                if let Class::Basis(t) = fc {
                    if e_images.get(t).is_some_and(|c| *c != Class::Basis(id)) {
                        string_rule.absorb(Check::fail(Some(cb.rep(id)), "f~ b = b' but e~ b' differs from b"));
                    }
                }
            }
            for (&id, ec) in &e_images {
                if let Class::Basis(t) = ec {
                    if f_images.get(t).is_some_and(|c| *c != Class::Basis(id)) {
                        string_rule.absorb(Check::fail(Some(cb.rep(id)), "e~ b = b' but f~ b' differs from b"));
                    }
                }
            }
        }
    }
    Ok(BasisReport { lattice, basis_mod_q, e_closed, f_closed, string_rule })
}
