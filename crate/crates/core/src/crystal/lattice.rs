use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CrystalError;
use crate::linalg::dvr::DvrBasis;
use crate::qq::RatFunc;
use crate::rep::{ComponentShape, Element, ModuleShape, Slot, Tag};

/// Coefficient law `unit * q^(a k + b)` along one string. Only `a` and `b` affect the lattice;
/// `unit` fixes the representatives used for basis classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailLaw {
    pub a: i64,
    pub b: i64,
    pub unit: RatFunc,
}

impl TailLaw {
    pub fn new(a: i64, b: i64) -> Self {
        TailLaw { a, b, unit: RatFunc::one() }
    }

    pub fn ord_at(&self, k: i64) -> i64 {
        self.a * k + self.b
    }

    pub fn coeff_at(&self, k: i64) -> RatFunc {
        &self.unit * &RatFunc::q_pow(self.ord_at(k))
    }
}

/// Behaviour of a lattice along a string below the explicit region.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    /// The lattice is `A * q^(a k + b) f^(k) g` on these slots.
    Monomial(TailLaw),
    /// The lattice has no component on these slots.
    Zero,
    /// Not known in closed form; only the explicit region is meaningful.
    Windowed,
}

/// An `A`-lattice in a module. Every weight at or above `floor` carries an explicit echelon
/// basis in the coordinates of [`ModuleShape::weight_slots`]; below it each string follows its
/// [`Tail`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    shape: ModuleShape,
    floor: i64,
    spaces: BTreeMap<i64, DvrBasis>,
    tails: Vec<Tail>,
}

/// Lowest explicit weight for a given window: infinite strings keep `k <= window`, finite
/// strings are kept whole.
pub fn window_floor(shape: &ModuleShape, window: u64) -> i64 {
    shape
        .strings()
        .iter()
        .map(|&(c, tag)| {
            let comp = &shape.components[c];
            comp.slot_weight(tag, comp.max_k().unwrap_or(window))
        })
        .min()
        .unwrap_or(0)
}

fn string_index(shape: &ModuleShape, c: usize, tag: Tag) -> usize {
    shape.strings().iter().position(|&s| s == (c, tag)).expect("string of the shape")
}

impl Lattice {
    /// Builds a lattice from per-weight generators given in slot coordinates.
    pub fn from_weight_generators(
        shape: &ModuleShape,
        floor: i64,
        mut gens_at: impl FnMut(i64, &[Slot]) -> Vec<Vec<RatFunc>>,
        tails: Vec<Tail>,
    ) -> Self {
        assert_eq!(tails.len(), shape.strings().len(), "one tail per string");
        let mut tails = tails;
        for (t, &(c, _)) in tails.iter_mut().zip(&shape.strings()) {
            if shape.components[c].is_findim() {
                *t = Tail::Zero;
            }
        }
        let mut spaces = BTreeMap::new();
        if let Some(top) = shape.max_weight() {
            for w in floor..=top {
                let slots = shape.weight_slots(w);
                if slots.is_empty() {
                    continue;
                }
                let gens = gens_at(w, &slots);
                spaces.insert(w, DvrBasis::from_generators(&gens, slots.len()));
            }
        }
        Lattice { shape: shape.clone(), floor, spaces, tails }
    }

    /// The lattice `sum A * c(string, k) f^(k) g` with one coefficient per slot; `None` leaves the
    /// slot out. The tails continue the pattern below the window.
    pub fn diagonal(
        shape: &ModuleShape,
        window: u64,
        coeff: impl Fn(usize, u64) -> Option<RatFunc>,
        tails: Vec<Tail>,
    ) -> Self {
        let strings = shape.strings();
        Self::from_weight_generators(
            shape,
            window_floor(shape, window),
            |_, slots| {
                slots
                    .iter()
                    .enumerate()
                    .filter_map(|(j, s)| {
                        let idx = strings.iter().position(|&x| x == (s.component, s.tag)).unwrap();
                        coeff(idx, s.k).map(|c| {
                            let mut v = vec![RatFunc::zero(); slots.len()];
                            v[j] = c;
                            v
                        })
                    })
                    .collect()
            },
            tails,
        )
    }

    /// Lattice given by a tail law on every string, applied at every slot.
    pub fn from_laws(shape: &ModuleShape, window: u64, laws: Vec<Tail>) -> Self {
        let laws2 = laws.clone();
        Self::diagonal(
            shape,
            window,
            move |i, k| match &laws2[i] {
                Tail::Monomial(l) => Some(l.coeff_at(k as i64)),
                _ => None,
            },
            laws,
        )
    }

    /// The standard lattice `sum A f^(k) g` over all strings.
    pub fn standard(shape: &ModuleShape, window: u64) -> Self {
        let n = shape.strings().len();
        Self::from_laws(shape, window, vec![Tail::Monomial(TailLaw::new(0, 0)); n])
    }

    /// `sum_k A f^(k) X` for weight vectors `X`, using divided powers of `f`.
    pub fn from_string_generators(shape: &ModuleShape, window: u64, gens: &[Element]) -> Result<Self, CrystalError> {
        let mut weighted = Vec::new();
        for g in gens {
            if g.is_zero() {
                continue;
            }
            let w = g.weight(shape).ok_or(CrystalError::MixedWeights)?;
            weighted.push((w, g.clone()));
        }
        // a generator sitting on a single string top gives a monomial tail
        let strings = shape.strings();
        let mut tails = vec![Tail::Zero; strings.len()];
        for (_, g) in &weighted {
            let single = g.len() == 1 && g.slots().next().unwrap().k == 0;
            if single {
                let (s, c) = g.terms().next().unwrap();
                let i = string_index(shape, s.component, s.tag);
                let (b, unit) = c.split_unit().unwrap();
                tails[i] = match &tails[i] {
                    Tail::Zero => Tail::Monomial(TailLaw { a: 0, b, unit }),
                    Tail::Monomial(l) if l.b <= b => Tail::Monomial(l.clone()),
                    Tail::Monomial(_) => Tail::Monomial(TailLaw { a: 0, b, unit }),
                    Tail::Windowed => Tail::Windowed,
                };
            } else {
                for s in g.slots() {
                    tails[string_index(shape, s.component, s.tag)] = Tail::Windowed;
                }
            }
        }
        let mut failure = None;
        let lattice = Self::from_weight_generators(
            shape,
            window_floor(shape, window),
            |w, slots| {
                let mut rows = Vec::new();
                for (gw, g) in &weighted {
                    let d = gw - w;
                    if d < 0 || d % 2 != 0 {
                        continue;
                    }
                    match crate::rep::divided_f(g, shape, (d / 2) as u64) {
                        Ok(x) => rows.push(x.coords(slots)),
                        Err(e) => failure = Some(e),
                    }
                }
                rows
            },
            tails,
        );
        match failure {
            Some(e) => Err(e.into()),
            None => Ok(lattice),
        }
    }

    pub fn shape(&self) -> &ModuleShape {
        &self.shape
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn tails(&self) -> &[Tail] {
        &self.tails
    }

    /// Explicit weights, highest first.
    pub fn weights(&self) -> impl Iterator<Item = i64> + '_ {
        self.spaces.keys().rev().copied()
    }

    pub fn has_windowed_tail(&self) -> bool {
        self.tails.iter().any(|t| matches!(t, Tail::Windowed))
    }

    /// First slot index of a string that lies below the explicit region.
    pub fn first_tail_k(&self, string: usize) -> i64 {
        let (c, tag) = self.shape.strings()[string];
        let top = self.shape.components[c].top_weight(tag);
        // smallest k with top - 2k < floor
        (top - self.floor).div_euclid(2) + 1
    }

    /// Echelon basis of the lattice in weight `w`.
    pub fn space(&self, w: i64) -> Result<DvrBasis, CrystalError> {
        if let Some(b) = self.spaces.get(&w) {
            return Ok(b.clone());
        }
        let slots = self.shape.weight_slots(w);
        if w >= self.floor || slots.is_empty() {
            return Ok(DvrBasis::empty(slots.len()));
        }
        let strings = self.shape.strings();
        let mut gens = Vec::new();
        for (j, s) in slots.iter().enumerate() {
            let i = strings.iter().position(|&x| x == (s.component, s.tag)).unwrap();
            match &self.tails[i] {
                Tail::Monomial(l) => {
                    let mut v = vec![RatFunc::zero(); slots.len()];
                    v[j] = l.coeff_at(s.k as i64);
                    gens.push(v);
                }
                Tail::Zero => {}
                Tail::Windowed => return Err(CrystalError::WindowExceeded(w)),
            }
        }
        Ok(DvrBasis::from_generators(&gens, slots.len()))
    }

    /// Basis vectors of the lattice in weight `w` as elements.
    pub fn basis_at(&self, w: i64) -> Result<Vec<Element>, CrystalError> {
        let slots = self.shape.weight_slots(w);
        Ok(self.space(w)?.rows.iter().map(|r| Element::from_coords(&slots, r)).collect())
    }

    pub fn rank_at(&self, w: i64) -> Result<usize, CrystalError> {
        Ok(self.space(w)?.rank())
    }

    /// Membership of an arbitrary element, split by weight.
    pub fn contains(&self, x: &Element) -> Result<bool, CrystalError> {
        let mut by_weight: BTreeMap<i64, Element> = BTreeMap::new();
        for (s, c) in x.terms() {
            let comp = self.shape.component(s.component)?;
            by_weight.entry(comp.slot_weight(s.tag, s.k)).or_default().add_term(*s, c.clone());
        }
        for (w, part) in by_weight {
            let slots = self.shape.weight_slots(w);
            if !self.space(w)?.contains(&part.coords(&slots)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Lowers the explicit region to `floor`, materializing tails.
    pub fn widen(&self, floor: i64) -> Result<Lattice, CrystalError> {
        if floor >= self.floor {
            return Ok(self.clone());
        }
        let mut out = self.clone();
        for w in floor..self.floor {
            if self.shape.weight_slots(w).is_empty() {
                continue;
            }
            out.spaces.insert(w, self.space(w)?);
        }
        out.floor = floor;
        Ok(out)
    }

    fn check_shape(&self, other: &Lattice) -> Result<(), CrystalError> {
        if self.shape != other.shape {
            return Err(CrystalError::ShapeMismatch);
        }
        Ok(())
    }

    fn aligned(&self, other: &Lattice) -> Result<(Lattice, Lattice), CrystalError> {
        self.check_shape(other)?;
        let floor = self.floor.min(other.floor);
        Ok((self.widen(floor)?, other.widen(floor)?))
    }

    /// `other ⊆ self`. Strings with a windowed tail on either side are compared on the explicit
    /// region only.
    pub fn contains_lattice(&self, other: &Lattice) -> Result<bool, CrystalError> {
        let (a, b) = self.aligned(other)?;
        for (w, space) in &b.spaces {
            if !a.space(*w)?.contains_lattice(space) {
                return Ok(false);
            }
        }
        for i in 0..a.tails.len() {
            let k0 = a.first_tail_k(i);
            let ok = match (&a.tails[i], &b.tails[i]) {
                (_, Tail::Zero) | (Tail::Windowed, _) | (_, Tail::Windowed) => true,
                (Tail::Zero, Tail::Monomial(_)) => false,
                (Tail::Monomial(big), Tail::Monomial(small)) => {
                    small.a >= big.a && small.ord_at(k0) >= big.ord_at(k0)
                }
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Lattice) -> Result<bool, CrystalError> {
        Ok(self.contains_lattice(other)? && other.contains_lattice(self)?)
    }

    /// `c * L`.
    pub fn scaled(&self, c: &RatFunc) -> Lattice {
        let ord = c.ord().finite().expect("nonzero scalar");
        let (_, unit) = c.split_unit().unwrap();
        Lattice {
            shape: self.shape.clone(),
            floor: self.floor,
            spaces: self.spaces.iter().map(|(w, s)| (*w, s.scaled(c))).collect(),
            tails: self
                .tails
                .iter()
                .map(|t| match t {
                    Tail::Monomial(l) => Tail::Monomial(TailLaw { a: l.a, b: l.b + ord, unit: &l.unit * &unit }),
                    other => other.clone(),
                })
                .collect(),
        }
    }

    /// Combines two lattices weight by weight, with `take_max` choosing the pointwise larger
    /// valuation on monomial tails (intersection) or the smaller one (sum).
    fn combine(
        &self,
        other: &Lattice,
        op: impl Fn(&DvrBasis, &DvrBasis) -> DvrBasis,
        take_max: bool,
    ) -> Result<Lattice, CrystalError> {
        let (mut a, mut b) = self.aligned(other)?;
        loop {
            let mut need_floor = a.floor;
            let mut tails = Vec::new();
            for i in 0..a.tails.len() {
                let k0 = a.first_tail_k(i);
                let t = match (&a.tails[i], &b.tails[i]) {
                    (Tail::Windowed, _) | (_, Tail::Windowed) => Tail::Windowed,
                    (Tail::Zero, Tail::Zero) => Tail::Zero,
                    (Tail::Zero, t) | (t, Tail::Zero) => {
                        if take_max {
                            Tail::Zero
                        } else {
                            t.clone()
                        }
                    }
                    (Tail::Monomial(x), Tail::Monomial(y)) => {
                        // the law that wins from k0 on, if one does
                        let (hi, lo) = if (x.a, x.ord_at(k0)) >= (y.a, y.ord_at(k0)) { (x, y) } else { (y, x) };
                        let win = if take_max { hi } else { lo };
                        if hi.a != lo.a && hi.ord_at(k0) < lo.ord_at(k0) {
                            // curves cross inside the tail; push the floor past the crossing
                            let cross = (lo.b - hi.b).div_euclid(hi.a - lo.a) + 1;
                            let (c, tag) = a.shape.strings()[i];
                            let top = a.shape.components[c].top_weight(tag);
                            need_floor = need_floor.min(top - 2 * cross);
                        }
                        Tail::Monomial(win.clone())
                    }
                };
                tails.push(t);
            }
            if need_floor < a.floor {
                a = a.widen(need_floor)?;
                b = b.widen(need_floor)?;
                continue;
            }
            let mut spaces = BTreeMap::new();
            for (w, s) in &a.spaces {
                spaces.insert(*w, op(s, &b.spaces[w]));
            }
            return Ok(Lattice { shape: a.shape.clone(), floor: a.floor, spaces, tails });
        }
    }

    pub fn intersect(&self, other: &Lattice) -> Result<Lattice, CrystalError> {
        self.combine(other, |x, y| x.intersect(y), true)
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice, CrystalError> {
        self.combine(other, |x, y| x.sum(y), false)
    }

    /// `L ∩ W` for a weight-graded subspace given by a basis at each explicit weight.
    pub fn intersect_subspace(
        &self,
        basis_at: impl Fn(i64) -> Result<Vec<Element>, CrystalError>,
        tails: Vec<Tail>,
    ) -> Result<Lattice, CrystalError> {
        let mut spaces = BTreeMap::new();
        for (w, s) in &self.spaces {
            let slots = self.shape.weight_slots(*w);
            let sub: Vec<_> = basis_at(*w)?.iter().map(|e| e.coords(&slots)).collect();
            spaces.insert(*w, s.intersect_subspace(&sub));
        }
        Ok(Lattice { shape: self.shape.clone(), floor: self.floor, spaces, tails })
    }

    /// `L ∩ Ker e`. The kernel of `e` lives at finitely many weights, all of which must be explicit.
    pub fn kernel_e(&self) -> Result<Lattice, CrystalError> {
        for &(c, tag) in &self.shape.strings() {
            let comp = &self.shape.components[c];
            let mut lowest = comp.top_weight(tag);
            if let ComponentShape::T(n) = comp {
                if tag == Tag::V {
                    lowest = -(*n as i64) - 2;
                }
            }
            if lowest < self.floor {
                return Err(CrystalError::WindowExceeded(lowest));
            }
        }
        let shape = self.shape.clone();
        self.intersect_subspace(
            |w| Ok(crate::rep::ker_e(&shape, w)?),
            vec![Tail::Zero; self.tails.len()],
        )
    }

    /// Image under a weight-preserving linear map given on slots. The image is computed on the
    /// explicit region of `self`; `tails` describe the image below it.
    pub fn map(
        &self,
        target: &ModuleShape,
        f: impl Fn(Slot) -> Element,
        tails: Vec<Tail>,
    ) -> Result<Lattice, CrystalError> {
        let mut images: BTreeMap<i64, Vec<Element>> = BTreeMap::new();
        for (w, s) in &self.spaces {
            let slots = self.shape.weight_slots(*w);
            for row in &s.rows {
                let mut img = Element::zero();
                for (slot, c) in slots.iter().zip(row) {
                    if !c.is_zero() {
                        img = img.add(&f(*slot).scale(c));
                    }
                }
                if img.is_zero() {
                    continue;
                }
                let tw = img.weight(target).ok_or(CrystalError::MixedWeights)?;
                images.entry(tw).or_default().push(img);
            }
        }
        let floor = self.floor.max(window_floor_min(target));
        Ok(Lattice::from_weight_generators(
            target,
            floor,
            |w, slots| images.get(&w).map(|v| v.iter().map(|e| e.coords(slots)).collect()).unwrap_or_default(),
            tails,
        ))
    }

    /// Generators of the explicit region paired with their weights, for dumps.
    pub fn generator_rows(&self) -> Vec<(i64, Element)> {
        let mut out = Vec::new();
        for w in self.weights() {
            for e in self.basis_at(w).unwrap() {
                out.push((w, e));
            }
        }
        out
    }
}

/// Lowest weight present in a shape whose strings are all finite; very negative otherwise.
fn window_floor_min(shape: &ModuleShape) -> i64 {
    if shape.components.iter().all(ComponentShape::is_findim) {
        window_floor(shape, 0)
    } else {
        i64::MIN / 4
    }
}
