use serde::{Deserialize, Serialize};

use super::CompletionError;
use crate::qq::qcomb::q_int_laurent;
use crate::qq::{q_factorial, q_int, Laurent, RatFunc};
use crate::rep::{act, divided_f, AlgebraGen, Element, ModuleShape};

/// A formal fraction `f^(-r) m` in the localization of a torsion-free module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeodharSymbol {
    pub r: u64,
    pub m: Element,
}

impl DeodharSymbol {
    pub fn new(r: u64, m: Element) -> Self {
        DeodharSymbol { r, m }
    }
}

fn check_torsion_free(shape: &ModuleShape) -> Result<(), CompletionError> {
    if let Some(i) = shape.components.iter().position(|c| c.is_findim()) {
        return Err(crate::rep::RepError::FinDimPresent(i).into());
    }
    Ok(())
}

/// `f^-1 x` when `x` lies in `f M`.
fn divide_by_f(x: &Element) -> Option<Element> {
    let mut out = Element::zero();
    for (s, c) in x.terms() {
        if s.k == 0 {
            return None;
        }
        // f f^(k-1) = [k] f^(k)
        out.add_term(s.with_k(s.k - 1), c / &q_int(s.k as i64));
    }
    Some(out)
}

/// Cancels powers of `f` until `r = 0` or `m` is not in `f M`.
pub fn deodhar_normalize(s: &DeodharSymbol, shape: &ModuleShape) -> Result<DeodharSymbol, CompletionError> {
    check_torsion_free(shape)?;
    let mut r = s.r;
    let mut m = s.m.clone();
    while r > 0 && !m.is_zero() {
        match divide_by_f(&m) {
            Some(x) => {
                m = x;
                r -= 1;
            }
            None => break,
        }
    }
    if m.is_zero() {
        r = 0;
    }
    Ok(DeodharSymbol { r, m })
}

/// Largest number of `e`-steps that can act nontrivially on the symbol's numerator and its
/// `f`-translates in the search; bounds the search for a vanishing `e`-power.
fn search_depth(s: &DeodharSymbol, shape: &ModuleShape) -> u64 {
    let kmax = s.m.slots().map(|x| x.k).max().unwrap_or(0);
    let tops = shape
        .strings()
        .iter()
        .map(|&(c, t)| shape.components[c].top_weight(t).unsigned_abs())
        .max()
        .unwrap_or(0);
    2 * kmax + tops + s.r + 4
}

/// Membership of a minimal weight symbol in the completion: its weight is `r - j` for some
/// `j > 0`, and `e^p f^(p-j) m = 0` for some `p >= j`.
pub fn in_completion(s: &DeodharSymbol, shape: &ModuleShape) -> Result<bool, CompletionError> {
    let s = deodhar_normalize(s, shape)?;
    if s.r == 0 {
        return Ok(true);
    }
    let wm = s.m.weight(shape).ok_or(CompletionError::NotWeightVector)?;
    // weight of f^-r m
    let a = wm + 2 * s.r as i64;
    let j = s.r as i64 - a;
    if j <= 0 {
        return Ok(false);
    }
    let j = j as u64;
    for p in j..=j + search_depth(&s, shape) {
        // undivided power f^(p-j) = [p-j]! f^((p-j))
        let mut y = divided_f(&s.m, shape, p - j)?.scale(&q_factorial((p - j) as i64));
        for _ in 0..p {
            if y.is_zero() {
                break;
            }
            y = act(AlgebraGen::E, &y, shape)?;
        }
        if y.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Coefficient `c` with `f^(j) m0 = c f^(j+n+1) m~` in the completion `M(n)` of `M(-n-2)`, where
/// `f^(n+1) m~ = m0`. Defined for `j >= -n-1`.
pub fn m0_to_completion(n: u64, j: i64) -> RatFunc {
    let i = j + n as i64 + 1;
    assert!(i >= 0, "slot below the completion");
    if j >= 0 {
        // [i]! / [j]! as the product [j+1] ... [i]
        let top = (j + 1..=i).fold(Laurent::one(), |acc, t| acc.mul(&q_int_laurent(t)));
        return &top.to_ratfunc() / &q_factorial(n as i64 + 1);
    }
    &q_factorial(i) / &(&q_factorial(n as i64 + 1) * &q_factorial(j))
}

/// `f^(i) f^(-k) m = [i-k]! / ([i]! [-k]!) f^(i-k) m`.
pub fn negative_divided_product(i: u64, k: u64) -> RatFunc {
    let i = i as i64;
    let k = k as i64;
    &q_factorial(i - k) / &(&q_factorial(i) * &q_factorial(-k))
}
