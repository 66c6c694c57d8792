use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Tag;
use crate::qq::RatFunc;

/// Basis vector `f^(k) g` where `g` is the generator `tag` of component `component`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub component: usize,
    pub tag: Tag,
    pub k: u64,
}

impl Slot {
    pub fn new(component: usize, tag: Tag, k: u64) -> Self {
        Slot { component, tag, k }
    }

    pub fn with_k(self, k: u64) -> Self {
        Slot { k, ..self }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f^({}){}[{}]", self.k, self.tag, self.component)
    }
}

/// A finite linear combination of slots with coefficients in `Q(q)`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Slot, RatFunc>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(slot: Slot) -> Self {
        Self::term(slot, RatFunc::one())
    }

    pub fn term(slot: Slot, c: RatFunc) -> Self {
        let mut e = Self::zero();
        e.add_term(slot, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, slot: &Slot) -> RatFunc {
        self.terms.get(slot).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Slot, &RatFunc)> {
        self.terms.iter()
    }

    pub fn slots(&self) -> impl Iterator<Item = &Slot> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, slot: Slot, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&slot) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&slot);
                }
            }
            None => {
                self.terms.insert(slot, c);
            }
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(*s, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&RatFunc::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFunc) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(s, x)| (*s, x * c)).collect() }
    }

    pub fn neg(&self) -> Element {
        self.scale(&RatFunc::from_int(-1))
    }

    /// Coordinates along the given slots.
    pub fn coords(&self, slots: &[Slot]) -> Vec<RatFunc> {
        slots.iter().map(|s| self.coeff(s)).collect()
    }

    pub fn from_coords(slots: &[Slot], coords: &[RatFunc]) -> Element {
        let mut e = Element::zero();
        for (s, c) in slots.iter().zip(coords) {
            e.add_term(*s, c.clone());
        }
        e
    }

    /// Common weight of all terms, if the element is a nonzero weight vector.
    pub fn weight(&self, shape: &super::ModuleShape) -> Option<i64> {
        let mut w = None;
        for s in self.terms.keys() {
            let sw = shape.components.get(s.component)?.slot_weight(s.tag, s.k);
            match w {
                None => w = Some(sw),
                Some(x) if x != sw => return None,
                _ => {}
            }
        }
        w
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(s, c)| format!("({c})*{s}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    component: usize,
    tag: Tag,
    k: u64,
    coeff: RatFunc,
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let recs: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(sl, c)| TermRecord { component: sl.component, tag: sl.tag, k: sl.k, coeff: c.clone() })
            .collect();
        recs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let recs = Vec::<TermRecord>::deserialize(d)?;
        let mut e = Element::zero();
        for r in recs {
            e.add_term(Slot::new(r.component, r.tag, r.k), r.coeff);
        }
        Ok(e)
    }
}
