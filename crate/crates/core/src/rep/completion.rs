use serde::{Deserialize, Serialize};

use super::{ComponentShape, Element, ModuleShape, RepError, Slot, Tag};
use crate::qq::q_binomial;

/// `T(n)` and `M(r)` with `r >= -1` are complete; finite-dimensional pieces are not.
pub fn is_complete_module(shape: &ModuleShape) -> bool {
    shape.components.iter().all(|c| match c {
        ComponentShape::Verma(r) => *r >= -1,
        ComponentShape::T(_) => true,
        ComponentShape::FinDim(_) => false,
    })
}

/// How one component of `M` sits inside its completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentEmbedding {
    Identity,
    /// `M(-n-2) -> M(n)`, `m -> f^(n+1) m~`.
    VermaShift { n: u64 },
}

/// The completion of a module together with the embedding, component by component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleCompletion {
    pub source: ModuleShape,
    pub target: ModuleShape,
    pub embeddings: Vec<ComponentEmbedding>,
}

impl ModuleCompletion {
    pub fn embed_slot(&self, s: Slot) -> Element {
        match self.embeddings[s.component] {
            ComponentEmbedding::Identity => Element::basis(s),
            ComponentEmbedding::VermaShift { n } => {
                let k = n + 1 + s.k;
                Element::term(Slot::new(s.component, Tag::M, k), q_binomial(k as i64, s.k as i64))
            }
        }
    }

    pub fn embed(&self, x: &Element) -> Element {
        let mut out = Element::zero();
        for (s, c) in x.terms() {
            out = out.add(&self.embed_slot(*s).scale(c));
        }
        out
    }
}

pub fn completion_module(shape: &ModuleShape) -> Result<ModuleCompletion, RepError> {
    let mut target = Vec::new();
    let mut embeddings = Vec::new();
    for (i, c) in shape.components.iter().enumerate() {
        match *c {
            ComponentShape::Verma(r) if r <= -2 => {
                let n = (-r - 2) as u64;
                target.push(ComponentShape::Verma(n as i64));
                embeddings.push(ComponentEmbedding::VermaShift { n });
            }
            ComponentShape::FinDim(_) => return Err(RepError::FinDimPresent(i)),
            other => {
                target.push(other);
                embeddings.push(ComponentEmbedding::Identity);
            }
        }
    }
    Ok(ModuleCompletion { source: shape.clone(), target: ModuleShape::new(target), embeddings })
}
