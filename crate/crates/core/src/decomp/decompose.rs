use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{DecompError, TwistedPresentation};
use crate::linalg::dvr::{mod_q_rank, saturate};
use crate::linalg::{columns_to_matrix as columns, intersect_spans, mat_mul, mat_vec, nullspace, rank, solve, Matrix};
use crate::qq::RatFunc;
use crate::rep::{act_casimir, casimir_value, AlgebraGen, ComponentShape, Element, ModuleShape};

/// One summand of a recovered decomposition, with generators in presented coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Summand {
    /// Highest weight vector `m` of weight `r`.
    Verma { r: i64, m: Element },
    /// `T(n)` with `e' v = e' z = 0` and `e z = f^(n) v`.
    T { n: u64, v: Element, z: Element },
}

impl Summand {
    pub fn component(&self) -> ComponentShape {
        match self {
            Summand::Verma { r, .. } => ComponentShape::Verma(*r),
            Summand::T { n, .. } => ComponentShape::T(*n),
        }
    }

    /// Generators of the `B_q`-strings with their top weights.
    pub fn strings(&self) -> Vec<(i64, &Element)> {
        match self {
            Summand::Verma { r, m } => vec![(*r, m)],
            Summand::T { n, v, z } => vec![(*n as i64, v), (-(*n as i64) - 2, z)],
        }
    }

    fn top(&self) -> i64 {
        match self {
            Summand::Verma { r, .. } => *r,
            Summand::T { n, .. } => *n as i64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub standard: ModuleShape,
    pub summands: Vec<Summand>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DecomposeOptions {
    /// Scan candidate vectors from the last coordinate instead of the first.
    pub reverse: bool,
}

/// Entry of the JSON certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    #[serde(rename = "type")]
    pub kind: String,
    pub parameter: i64,
    pub generators: BTreeMap<String, Element>,
}

impl Decomposition {
    pub fn certificate(&self) -> Vec<CertificateEntry> {
        self.summands
            .iter()
            .map(|s| match s {
                Summand::Verma { r, m } => CertificateEntry {
                    kind: "M".into(),
                    parameter: *r,
                    generators: BTreeMap::from([("m".to_string(), m.clone())]),
                },
                Summand::T { n, v, z } => CertificateEntry {
                    kind: "T".into(),
                    parameter: *n as i64,
                    generators: BTreeMap::from([("v".to_string(), v.clone()), ("z".to_string(), z.clone())]),
                },
            })
            .collect()
    }

    pub fn verma_parameters(&self) -> Vec<i64> {
        let mut out: Vec<i64> =
            self.summands.iter().filter_map(|s| if let Summand::Verma { r, .. } = s { Some(*r) } else { None }).collect();
        out.sort_unstable();
        out
    }

    pub fn t_parameters(&self) -> Vec<u64> {
        let mut out: Vec<u64> =
            self.summands.iter().filter_map(|s| if let Summand::T { n, .. } = s { Some(*n) } else { None }).collect();
        out.sort_unstable();
        out
    }
}

struct WeightData {
    ker_e: Vec<Vec<RatFunc>>,
    ker_ep: Vec<Vec<RatFunc>>,
    both: Vec<Vec<RatFunc>>,
    image_f: Vec<Vec<RatFunc>>,
}

fn span_rank(vs: &[Vec<RatFunc>], ncols: usize) -> usize {
    rank(vs.to_vec(), ncols)
}

fn combine(coeffs: &[RatFunc], vs: &[Vec<RatFunc>], ncols: usize) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::zero(); ncols];
    for (c, v) in coeffs.iter().zip(vs) {
        if c.is_zero() {
            continue;
        }
        for j in 0..ncols {
            if !v[j].is_zero() {
                out[j] = &out[j] + &(c * &v[j]);
            }
        }
    }
    out
}

fn sub(a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Weights scanned by the decomposition.
pub(crate) fn scan_range(p: &TwistedPresentation) -> Option<(i64, i64)> {
    let top = p.base.max_weight()?;
    let mut low = p
        .base
        .strings()
        .iter()
        .map(|&(c, tag)| p.base.components[c].top_weight(tag))
        .min()
        .unwrap_or(top);
    if let Some(s) = p.support_floor() {
        low = low.min(s);
    }
    Some((low - 2, top))
}

fn weight_data(p: &TwistedPresentation, w: i64) -> Result<WeightData, DecompError> {
    let d = p.slots(w).len();
    let ker_e = nullspace(p.operator(AlgebraGen::E, w)?, d);
    let ker_ep = nullspace(p.operator(AlgebraGen::EPrime, w)?, d);
    let both = intersect_spans(&ker_e, &ker_ep, d);
    let above = p.slots(w + 2).len();
    let f = p.operator(AlgebraGen::F, w + 2)?;
    let image_f = (0..above).map(|j| f.iter().map(|row| row[j].clone()).collect()).collect();
    Ok(WeightData { ker_e, ker_ep, both, image_f })
}

/// Divided power `f^(j) : M_w -> M_{w - 2j}` in presented coordinates.
fn divided_f_matrix(p: &TwistedPresentation, w: i64, j: u64) -> Result<Matrix, DecompError> {
    p.matrix(w, -2 * j as i64, |x| crate::rep::divided_f(x, &p.base, j))
}

fn casimir_block(p: &TwistedPresentation, w: i64, n: u64) -> Result<Vec<Vec<RatFunc>>, DecompError> {
    let d = p.slots(w).len();
    let c = p.matrix(w, 0, |x| act_casimir(x, &p.base))?;
    let lambda = casimir_value(n as i64);
    let shifted: Matrix = c
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().enumerate().map(|(j, x)| if i == j { x - &lambda } else { x.clone() }).collect())
        .collect();
    // blocks of T(n) have Jordan length two
    Ok(nullspace(mat_mul(&shifted, &shifted, d), d))
}

fn ordered(vs: Vec<Vec<RatFunc>>, reverse: bool) -> Vec<Vec<RatFunc>> {
    if reverse {
        vs.into_iter().rev().collect()
    } else {
        vs
    }
}

/// Greedy extension of `base` by vectors of `candidates` that stay independent modulo `q`.
/// Falls back to independence over `Q(q)` when the reductions run out.
fn extend_mod_q(base: &[Vec<RatFunc>], candidates: &[Vec<RatFunc>], need: usize, ncols: usize) -> Vec<Vec<RatFunc>> {
    let mut current: Vec<Vec<RatFunc>> = base.to_vec();
    let mut picked = Vec::new();
    for c in candidates {
        if picked.len() == need {
            break;
        }
        let mut trial = current.clone();
        trial.push(c.clone());
        if mod_q_rank(&trial) == trial.len() {
            current = trial;
            picked.push(c.clone());
        }
    }
    for c in candidates {
        if picked.len() == need {
            break;
        }
        let mut trial = current.clone();
        trial.push(c.clone());
        if span_rank(&trial, ncols) == trial.len() {
            current = trial;
            picked.push(c.clone());
        }
    }
    picked
}

/// Splits a presented module into Verma modules and `T`-modules compatible with both
/// structures.
pub fn decompose(p: &TwistedPresentation, opts: DecomposeOptions) -> Result<Decomposition, DecompError> {
    p.validate()?;
    let Some((low, top)) = scan_range(p) else {
        return Ok(Decomposition { standard: ModuleShape::new(vec![]), summands: vec![] });
    };
    let mut data = BTreeMap::new();
    for w in low..=top {
        let d = p.slots(w).len();
        if d == 0 {
            continue;
        }
        let wd = weight_data(p, w)?;
        let fk = intersect_spans(&wd.image_f, &wd.ker_e, d);
        let mut joined = wd.both.clone();
        joined.extend(fk);
        if span_rank(&joined, d) != wd.ker_e.len() {
            return Err(DecompError::Condition { condition: 'b', weight: w });
        }
        data.insert(w, wd);
    }

    let mut summands = Vec::new();
    let mut tops: BTreeMap<i64, Vec<Vec<RatFunc>>> = BTreeMap::new();
    for (&w, wd) in data.range(..=-2) {
        let count = wd.ker_ep.len() - wd.both.len();
        if count == 0 {
            continue;
        }
        let d = p.slots(w).len();
        let n = (-w - 2) as u64;
        // U_q-generators: block vectors outside f M + Ker e
        let block = casimir_block(p, w, n)?;
        let mut span: Vec<Vec<RatFunc>> = wd.image_f.iter().chain(&wd.ker_e).cloned().collect();
        let mut raw = Vec::new();
        for g in ordered(block, opts.reverse) {
            if raw.len() == count {
                break;
            }
            let mut trial = span.clone();
            trial.push(g.clone());
            if span_rank(&trial, d) > span_rank(&span, d) {
                span = trial;
                raw.push(g);
            }
        }
        if raw.len() < count {
            return Err(DecompError::Condition { condition: 'c', weight: w });
        }
        // subtract w in Ker e so that e' kills the result
        let ep = p.operator(AlgebraGen::EPrime, w)?;
        let ep_on_ker: Matrix = columns(&wd.ker_e.iter().map(|k| mat_vec(&ep, k)).collect::<Vec<_>>(), p.slots(w + 2).len());
        let mut corrected = Vec::new();
        for z in raw {
            let target = mat_vec(&ep, &z);
            let c = solve(&ep_on_ker, &target, wd.ker_e.len())
                .ok_or(DecompError::Condition { condition: 'c', weight: w })?;
            corrected.push(sub(&z, &combine(&c, &wd.ker_e, d)));
        }
        // lattice normalization: the Verma tops and T-generators form an A-basis of Ker e' ∩ A^d
        let hs = saturate(&wd.both, d, opts.reverse);
        let mut all = hs.clone();
        all.extend(corrected);
        let sat = saturate(&all, d, opts.reverse);
        let zs: Vec<Vec<RatFunc>> = sat[hs.len()..].to_vec();
        tops.insert(w, hs);
        let e = p.operator(AlgebraGen::E, w)?;
        let fn_mat = divided_f_matrix(p, n as i64, n)?;
        for z in zs {
            let ez = mat_vec(&e, &z);
            let v = solve(&fn_mat, &ez, p.slots(n as i64).len())
                .ok_or(DecompError::Condition { condition: 'c', weight: w })?;
            summands.push(Summand::T {
                n,
                v: Element::from_coords(&p.slots(n as i64), &v),
                z: Element::from_coords(&p.slots(w), &z),
            });
        }
    }

    for (&w, wd) in &data {
        let d = p.slots(w).len();
        let slots = p.slots(w);
        let vs: Vec<Vec<RatFunc>> = summands
            .iter()
            .filter_map(|s| match s {
                Summand::T { n, v, .. } if *n as i64 == w => Some(v.coords(&slots)),
                _ => None,
            })
            .collect();
        if wd.both.len() < vs.len() {
            return Err(DecompError::Condition { condition: 'c', weight: w });
        }
        let need = wd.both.len() - vs.len();
        if need == 0 {
            continue;
        }
        let hs = match tops.remove(&w) {
            Some(hs) => hs,
            None => saturate(&wd.both, d, opts.reverse),
        };
        let vs_sat = saturate(&vs, d, opts.reverse);
        let picked = extend_mod_q(&vs_sat, &hs, need, d);
        if picked.len() < need {
            return Err(DecompError::Condition { condition: 'b', weight: w });
        }
        for m in picked {
            summands.push(Summand::Verma { r: w, m: Element::from_coords(&slots, &m) });
        }
    }

    summands.sort_by_key(|s| (std::cmp::Reverse(s.top()), matches!(s, Summand::T { .. })));
    let standard = ModuleShape::new(summands.iter().map(Summand::component).collect());
    Ok(Decomposition { standard, summands })
}
