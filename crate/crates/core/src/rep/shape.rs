use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::RepError;

/// Generator of one string of divided powers inside a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    /// Highest weight vector of a Verma module.
    M,
    /// Highest weight vector of `T(n)`.
    V,
    /// Generator of `T(n)` of weight `-n-2`.
    Z,
    /// Highest weight vector of a finite-dimensional simple module.
    U,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::M => "m",
            Tag::V => "v",
            Tag::Z => "z",
            Tag::U => "u",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentShape {
    Verma(i64),
    T(u64),
    FinDim(u64),
}

impl ComponentShape {
    pub fn tags(&self) -> &'static [Tag] {
        match self {
            ComponentShape::Verma(_) => &[Tag::M],
            ComponentShape::T(_) => &[Tag::V, Tag::Z],
            ComponentShape::FinDim(_) => &[Tag::U],
        }
    }

    pub fn has_tag(&self, tag: Tag) -> bool {
        self.tags().contains(&tag)
    }

    /// Weight of the generator `tag`.
    pub fn top_weight(&self, tag: Tag) -> i64 {
        match (self, tag) {
            (ComponentShape::Verma(r), _) => *r,
            (ComponentShape::T(n), Tag::Z) => -(*n as i64) - 2,
            (ComponentShape::T(n), _) | (ComponentShape::FinDim(n), _) => *n as i64,
        }
    }

    /// Largest `k` for the string, if finite.
    pub fn max_k(&self) -> Option<u64> {
        match self {
            ComponentShape::FinDim(n) => Some(*n),
            _ => None,
        }
    }

    pub fn slot_weight(&self, tag: Tag, k: u64) -> i64 {
        self.top_weight(tag) - 2 * k as i64
    }

    pub fn is_findim(&self) -> bool {
        matches!(self, ComponentShape::FinDim(_))
    }

    /// Slot index `k` on string `tag` with the given weight, if any.
    pub fn k_at_weight(&self, tag: Tag, weight: i64) -> Option<u64> {
        let d = self.top_weight(tag) - weight;
        if d < 0 || d % 2 != 0 {
            return None;
        }
        let k = (d / 2) as u64;
        match self.max_k() {
            Some(top) if k > top => None,
            _ => Some(k),
        }
    }

    fn kind_letter(&self) -> &'static str {
        match self {
            ComponentShape::Verma(_) => "M",
            ComponentShape::T(_) => "T",
            ComponentShape::FinDim(_) => "V",
        }
    }

    fn parameter(&self) -> i64 {
        match self {
            ComponentShape::Verma(r) => *r,
            ComponentShape::T(n) | ComponentShape::FinDim(n) => *n as i64,
        }
    }
}

impl fmt::Display for ComponentShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind_letter(), self.parameter())
    }
}

#[derive(Serialize, Deserialize)]
struct ComponentRecord {
    kind: String,
    parameter: i64,
}

impl Serialize for ComponentShape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ComponentRecord { kind: self.kind_letter().to_string(), parameter: self.parameter() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComponentShape {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = ComponentRecord::deserialize(d)?;
        component_from_parts(&rec.kind, rec.parameter).map_err(serde::de::Error::custom)
    }
}

fn component_from_parts(kind: &str, p: i64) -> Result<ComponentShape, RepError> {
    let nonneg = |p: i64| {
        u64::try_from(p).map_err(|_| RepError::Shape(format!("{kind}({p}) needs a nonnegative parameter")))
    };
    match kind {
        "M" => Ok(ComponentShape::Verma(p)),
        "T" => Ok(ComponentShape::T(nonneg(p)?)),
        "V" => Ok(ComponentShape::FinDim(nonneg(p)?)),
        other => Err(RepError::Shape(format!("unknown component kind {other:?}"))),
    }
}

/// A finite direct sum of indecomposables, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModuleShape {
    pub components: Vec<ComponentShape>,
}

impl ModuleShape {
    pub fn new(components: Vec<ComponentShape>) -> Self {
        ModuleShape { components }
    }

    pub fn single(c: ComponentShape) -> Self {
        ModuleShape { components: vec![c] }
    }

    pub fn verma(r: i64) -> Self {
        Self::single(ComponentShape::Verma(r))
    }

    pub fn t(n: u64) -> Self {
        Self::single(ComponentShape::T(n))
    }

    pub fn findim(n: u64) -> Self {
        Self::single(ComponentShape::FinDim(n))
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, i: usize) -> Result<&ComponentShape, RepError> {
        self.components.get(i).ok_or(RepError::ComponentOutOfRange(i))
    }

    pub fn has_findim(&self) -> bool {
        self.components.iter().any(ComponentShape::is_findim)
    }

    /// All slots of weight `w`, in component order then tag order.
    pub fn weight_slots(&self, w: i64) -> Vec<super::Slot> {
        let mut out = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            for &tag in c.tags() {
                if let Some(k) = c.k_at_weight(tag, w) {
                    out.push(super::Slot::new(i, tag, k));
                }
            }
        }
        out
    }

    /// Every string as `(component, tag)`.
    pub fn strings(&self) -> Vec<(usize, Tag)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.tags().iter().map(move |&t| (i, t)))
            .collect()
    }

    /// Largest weight occurring in the module.
    pub fn max_weight(&self) -> Option<i64> {
        self.strings().iter().map(|&(i, t)| self.components[i].top_weight(t)).max()
    }
}

impl fmt::Display for ModuleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl FromStr for ModuleShape {
    type Err = RepError;

    /// Parses `M(-3) + T(2) + V(1)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || RepError::Shape(format!("cannot parse shape {s:?}"));
        let mut comps = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            let open = part.find('(').ok_or_else(bad)?;
            let inner = part[open + 1..].strip_suffix(')').ok_or_else(bad)?;
            let p: i64 = inner.trim().parse().map_err(|_| bad())?;
            comps.push(component_from_parts(part[..open].trim(), p)?);
        }
        Ok(ModuleShape { components: comps })
    }
}
