use serde::{Deserialize, Serialize};

use super::{ComponentShape, Element, ModuleShape, RepError, Slot, Tag};
use crate::qq::{q_binomial, q_int, RatFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraGen {
    E,
    F,
    T,
    TInv,
    EPrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KashiwaraDir {
    ETilde,
    FTilde,
}

pub(crate) fn check_slot(shape: &ModuleShape, s: &Slot) -> Result<ComponentShape, RepError> {
    let c = *shape.component(s.component)?;
    if !c.has_tag(s.tag) || c.max_k().is_some_and(|top| s.k > top) {
        return Err(RepError::BadSlot(*s));
    }
    Ok(c)
}

fn check_element(shape: &ModuleShape, x: &Element) -> Result<(), RepError> {
    for s in x.slots() {
        check_slot(shape, s)?;
    }
    Ok(())
}

/// `f^(j)` applied to the slot `s`: `binom(j+k, j) f^(j+k)`, zero past a finite top.
pub fn divided_f_slot(c: &ComponentShape, s: Slot, j: u64) -> Element {
    let k = s.k + j;
    if c.max_k().is_some_and(|top| k > top) {
        return Element::zero();
    }
    Element::term(s.with_k(k), q_binomial(k as i64, j as i64))
}

/// `f^(j)` applied to an element.
pub fn divided_f(x: &Element, shape: &ModuleShape, j: u64) -> Result<Element, RepError> {
    let mut out = Element::zero();
    for (s, c) in x.terms() {
        let comp = check_slot(shape, s)?;
        out = out.add(&divided_f_slot(&comp, *s, j).scale(c));
    }
    Ok(out)
}

fn e_on_generator(c: &ComponentShape, s: Slot) -> Element {
    match (c, s.tag) {
        (ComponentShape::T(n), Tag::Z) => {
            Element::basis(Slot::new(s.component, Tag::V, 0).with_k(*n))
        }
        _ => Element::zero(),
    }
}

fn act_slot(g: AlgebraGen, c: &ComponentShape, s: Slot) -> Result<Element, RepError> {
    let wt = c.slot_weight(s.tag, s.k);
    Ok(match g {
        AlgebraGen::T => Element::term(s, RatFunc::q_pow(wt)),
        AlgebraGen::TInv => Element::term(s, RatFunc::q_pow(-wt)),
        AlgebraGen::F => {
            if c.max_k().is_some_and(|top| s.k + 1 > top) {
                Element::zero()
            } else {
                Element::term(s.with_k(s.k + 1), q_int(s.k as i64 + 1))
            }
        }
        AlgebraGen::E => {
            let base = e_on_generator(c, s.with_k(0));
            // f^(k) applied to e.g, then the commutator term
            let mut out = Element::zero();
            for (t, coeff) in base.terms() {
                out = out.add(&divided_f_slot(c, *t, s.k).scale(coeff));
            }
            if s.k > 0 {
                let w0 = c.top_weight(s.tag);
                out.add_term(s.with_k(s.k - 1), q_int(w0 - s.k as i64 + 1));
            }
            out
        }
        AlgebraGen::EPrime => {
            if c.is_findim() {
                return Err(RepError::EPrimeOnFinDim(s.component));
            }
            if s.k == 0 {
                Element::zero()
            } else {
                Element::term(s.with_k(s.k - 1), RatFunc::q_pow(-(s.k as i64 - 1)))
            }
        }
    })
}

/// Action of a generator of the algebra on an element.
pub fn act(g: AlgebraGen, x: &Element, shape: &ModuleShape) -> Result<Element, RepError> {
    let mut out = Element::zero();
    for (s, coeff) in x.terms() {
        let c = check_slot(shape, s)?;
        out = out.add(&act_slot(g, &c, *s)?.scale(coeff));
    }
    Ok(out)
}

/// Applies a word of generators, rightmost first.
pub fn act_word(word: &[AlgebraGen], x: &Element, shape: &ModuleShape) -> Result<Element, RepError> {
    let mut y = x.clone();
    for g in word.iter().rev() {
        y = act(*g, &y, shape)?;
    }
    Ok(y)
}

fn q_minus_q_inv_sq() -> RatFunc {
    let d = &RatFunc::q() - &RatFunc::q_pow(-1);
    &d * &d
}

/// `c_n = (q^(n+1) + q^(-n-1)) / (q - q^-1)^2`, the Casimir eigenvalue on `M(n)`.
pub fn casimir_value(r: i64) -> RatFunc {
    &(&RatFunc::q_pow(r + 1) + &RatFunc::q_pow(-r - 1)) / &q_minus_q_inv_sq()
}

fn qt_plus_inverse(x: &Element, shape: &ModuleShape) -> Result<Element, RepError> {
    let a = act(AlgebraGen::T, x, shape)?.scale(&RatFunc::q());
    let b = act(AlgebraGen::TInv, x, shape)?.scale(&RatFunc::q_pow(-1));
    Ok(a.add(&b))
}

/// `C = (q t + q^-1 t^-1) / (q - q^-1)^2 + f e`.
pub fn act_casimir(x: &Element, shape: &ModuleShape) -> Result<Element, RepError> {
    let fe = act_word(&[AlgebraGen::F, AlgebraGen::E], x, shape)?;
    Ok(qt_plus_inverse(x, shape)?.scale(&q_minus_q_inv_sq().inv().unwrap()).add(&fe))
}

/// `Δ = q t + q^-1 t^-1 + (q - q^-1)^2 f e - 2`.
pub fn act_delta(x: &Element, shape: &ModuleShape) -> Result<Element, RepError> {
    let fe = act_word(&[AlgebraGen::F, AlgebraGen::E], x, shape)?;
    Ok(qt_plus_inverse(x, shape)?.add(&fe.scale(&q_minus_q_inv_sq())).sub(&x.scale(&RatFunc::from_int(2))))
}

/// Splits `x = sum_k f^(k) u_k` with every `u_k` in the kernel of `e'`. Entries are listed by
/// decreasing `k`.
pub fn b_decompose(x: &Element, shape: &ModuleShape) -> Result<Vec<(u64, Element)>, RepError> {
    if let Some(i) = shape.components.iter().position(ComponentShape::is_findim) {
        return Err(RepError::FinDimPresent(i));
    }
    check_element(shape, x)?;
    let mut parts: std::collections::BTreeMap<u64, Element> = Default::default();
    for (s, c) in x.terms() {
        parts.entry(s.k).or_default().add_term(s.with_k(0), c.clone());
    }
    Ok(parts.into_iter().rev().collect())
}

/// Kashiwara operators: string shifts on every component, with `f~` killing the top of a
/// finite string.
pub fn kashiwara(dir: KashiwaraDir, x: &Element, shape: &ModuleShape) -> Result<Element, RepError> {
    let mut out = Element::zero();
    for (s, c) in x.terms() {
        let comp = check_slot(shape, s)?;
        match dir {
            KashiwaraDir::ETilde if s.k > 0 => out.add_term(s.with_k(s.k - 1), c.clone()),
            KashiwaraDir::ETilde => {}
            KashiwaraDir::FTilde => {
                if comp.max_k().is_none_or(|top| s.k < top) {
                    out.add_term(s.with_k(s.k + 1), c.clone());
                }
            }
        }
    }
    Ok(out)
}

/// Applies a Kashiwara operator `times` times.
pub fn kashiwara_pow(dir: KashiwaraDir, x: &Element, shape: &ModuleShape, times: u64) -> Result<Element, RepError> {
    let mut y = x.clone();
    for _ in 0..times {
        y = kashiwara(dir, &y, shape)?;
    }
    Ok(y)
}
