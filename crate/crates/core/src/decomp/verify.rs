use std::collections::BTreeMap;

use serde::Serialize;

use super::decompose::scan_range;
use super::{DecompError, Decomposition, Summand, TwistedPresentation};
use crate::crystal::{Lattice, Tail};
use crate::linalg::{columns_to_matrix, rank, solve, Matrix};
use crate::qq::RatFunc;
use crate::rep::{act, completion_module, divided_f, AlgebraGen, Element, ModuleShape};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorCheck {
    pub summand: usize,
    pub condition: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub generators: Vec<GeneratorCheck>,
    /// The strings of all generators form a basis of every weight space scanned.
    pub direct_sum: bool,
    pub pass: bool,
}

/// Checks the generator conditions and that the strings span each weight space freely, down to
/// `depth` steps below the twisted region.
pub fn verify_decomposition(
    p: &TwistedPresentation,
    d: &Decomposition,
    depth: u64,
) -> Result<DecompositionReport, DecompError> {
    let mut checks = Vec::new();
    let mut push = |i: usize, c: &str, pass: bool| checks.push(GeneratorCheck { summand: i, condition: c.into(), pass });
    let weight_is = |x: &Element, w: i64| x.weight(&p.base) == Some(w);
    for (i, s) in d.summands.iter().enumerate() {
        match s {
            Summand::Verma { r, m } => {
                push(i, "weight", weight_is(m, *r));
                push(i, "e m = 0", p.act(AlgebraGen::E, m)?.is_zero());
                push(i, "e' m = 0", p.act(AlgebraGen::EPrime, m)?.is_zero());
            }
            Summand::T { n, v, z } => {
                push(i, "weight", weight_is(v, *n as i64) && weight_is(z, -(*n as i64) - 2));
                push(i, "e v = 0", p.act(AlgebraGen::E, v)?.is_zero());
                push(i, "e' v = 0", p.act(AlgebraGen::EPrime, v)?.is_zero());
                push(i, "e' z = 0", p.act(AlgebraGen::EPrime, z)?.is_zero());
                push(i, "e z = f^(n) v", p.act(AlgebraGen::E, z)? == p.divided_f(v, *n)?);
            }
        }
    }
    let mut direct_sum = true;
    if let Some((low, top)) = scan_range(p) {
        for w in low - 2 * depth as i64..=top {
            let slots = p.slots(w);
            let mut vecs = Vec::new();
            for s in &d.summands {
                for (t, g) in s.strings() {
                    if t >= w && (t - w) % 2 == 0 {
                        vecs.push(p.divided_f(g, ((t - w) / 2) as u64)?.coords(&slots));
                    }
                }
            }
            if vecs.len() != slots.len() || rank(vecs, slots.len()) != slots.len() {
                direct_sum = false;
            }
        }
    }
    let pass = direct_sum && checks.iter().all(|c| c.pass);
    Ok(DecompositionReport { generators: checks, direct_sum, pass })
}

fn string_lattice(shape: &ModuleShape, floor: i64, gens: &[(i64, Element)]) -> Result<Lattice, DecompError> {
    let mut rows: BTreeMap<i64, Vec<Vec<RatFunc>>> = BTreeMap::new();
    let top = shape.max_weight().unwrap_or(floor);
    for w in floor..=top {
        let slots = shape.weight_slots(w);
        let entry = rows.entry(w).or_default();
        for (t, g) in gens {
            if *t >= w && (t - w) % 2 == 0 {
                entry.push(divided_f(g, shape, ((t - w) / 2) as u64)?.coords(&slots));
            }
        }
    }
    let tails = vec![Tail::Windowed; shape.strings().len()];
    Ok(Lattice::from_weight_generators(shape, floor, |w, _| rows.remove(&w).unwrap_or_default(), tails))
}

/// `A`-span of the strings of a decomposition, in canonical coordinates of the base module,
/// explicit down to weight `floor`.
pub fn decomposition_lattice(p: &TwistedPresentation, d: &Decomposition, floor: i64) -> Result<Lattice, DecompError> {
    let mut gens = Vec::new();
    for s in &d.summands {
        for (t, g) in s.strings() {
            gens.push((t, p.to_base(g)?));
        }
    }
    string_lattice(&p.base, floor, &gens)
}

/// Completion of [`decomposition_lattice`] inside the completion of the base module: each
/// lowered Verma summand `M(-n-2)` with top `m` is replaced by the string of the vector `m~`
/// with `f^(n+1) m~ = m`. The remaining generators are first shifted by lowered tops of the same
/// weight so that their images are killed by `e'` of `C(M)`; this fixes the choice left open by
/// the decomposition.
pub fn completed_decomposition_lattice(
    p: &TwistedPresentation,
    d: &Decomposition,
    floor: i64,
) -> Result<Lattice, DecompError> {
    let completion = completion_module(&p.base)?;
    let target = &completion.target;
    let mut gens = Vec::new();
    for s in &d.summands {
        match s {
            Summand::Verma { r, m } if *r <= -2 => {
                let n = -r - 2;
                let image = completion.embed(&p.to_base(m)?);
                let src = target.weight_slots(n);
                let dst = target.weight_slots(*r);
                let cols: Vec<Element> = src
                    .iter()
                    .map(|s| divided_f(&Element::basis(*s), target, n as u64 + 1))
                    .collect::<Result<_, _>>()?;
                let mat: Matrix = dst.iter().map(|d| cols.iter().map(|c| c.coeff(d)).collect()).collect();
                let lifted = solve(&mat, &image.coords(&dst), src.len())
                    .ok_or_else(|| DecompError::Invalid(format!("no preimage under f^({}) at weight {r}", n + 1)))?;
                gens.push((n, Element::from_coords(&src, &lifted)));
            }
            _ => {
                for (t, g) in s.strings() {
                    gens.push((t, completion.embed(&p.to_base(g)?)));
                }
            }
        }
    }
    // move the other generators by lowered tops of equal weight into Ker e' of C(M)
    let lowered: Vec<(i64, Element)> = d
        .summands
        .iter()
        .filter_map(|s| match s {
            Summand::Verma { r, m } if *r <= -2 => Some((*r, m)),
            _ => None,
        })
        .map(|(r, m)| Ok((r, completion.embed(&p.to_base(m)?))))
        .collect::<Result<_, DecompError>>()?;
    for (t, g) in gens.iter_mut() {
        let lows: Vec<&Element> = lowered.iter().filter(|(r, _)| r == t).map(|(_, m)| m).collect();
        if lows.is_empty() {
            continue;
        }
        let above = target.weight_slots(*t + 2);
        let err = act(AlgebraGen::EPrime, g, target)?;
        if err.is_zero() {
            continue;
        }
        let cols: Vec<Vec<RatFunc>> =
            lows.iter().map(|m| Ok(act(AlgebraGen::EPrime, m, target)?.coords(&above))).collect::<Result<_, DecompError>>()?;
        let mat = columns_to_matrix(&cols, above.len());
        let rhs: Vec<RatFunc> = err.coords(&above).iter().map(|x| -x).collect();
        if let Some(c) = solve(&mat, &rhs, lows.len()) {
            for (ci, m) in c.iter().zip(&lows) {
                *g = g.add(&m.scale(ci));
            }
        }
    }
    string_lattice(target, floor, &gens)
}
