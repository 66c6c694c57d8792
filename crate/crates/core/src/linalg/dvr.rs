//! Linear algebra over the ring `A` of rational functions regular at `q = 0`.
//!
//! `A` is a discrete valuation ring with uniformizer `q`, so every finitely generated
//! torsion-free submodule of `Q(q)^n` is free and has an echelon basis whose pivots are
//! powers of `q`.

use num_rational::BigRational;
use num_traits::Zero;

use super::field::{nullspace, Matrix};
use crate::qq::{RatFunc, Valuation};

/// Echelon basis of an `A`-submodule of `Q(q)^n`. Row `i` has pivot `q^v` in column
/// `pivots[i]` and every later row vanishes there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DvrBasis {
    pub ncols: usize,
    pub rows: Vec<Vec<RatFunc>>,
    pub pivots: Vec<usize>,
}

impl DvrBasis {
    pub fn empty(ncols: usize) -> Self {
        DvrBasis { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    /// The `A`-span of arbitrary generators.
    pub fn from_generators(gens: &[Vec<RatFunc>], ncols: usize) -> Self {
        let mut rows: Vec<Vec<RatFunc>> =
            gens.iter().filter(|g| g.iter().any(|x| !x.is_zero())).cloned().collect();
        let mut out = DvrBasis::empty(ncols);
        for c in 0..ncols {
            let Some(p) = (0..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].ord())
            else {
                continue;
            };
            let mut pivot_row = rows.swap_remove(p);
            let (v, unit) = pivot_row[c].split_unit().unwrap();
            let unit_inv = unit.inv().unwrap();
            for x in pivot_row.iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &unit_inv;
                }
            }
            let pivot = RatFunc::q_pow(v);
            for row in rows.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let factor = &row[c] / &pivot;
                for j in 0..ncols {
                    if !pivot_row[j].is_zero() {
                        row[j] = &row[j] - &(&factor * &pivot_row[j]);
                    }
                }
            }
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
            out.rows.push(pivot_row);
            out.pivots.push(c);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Coefficients `c in A^rank` with `x = sum c_i rows[i]`, or `None` if `x` is not in the span.
    pub fn coordinates(&self, x: &[RatFunc]) -> Option<Vec<RatFunc>> {
        let mut rest = x.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if rest[pc].is_zero() {
                coords.push(RatFunc::zero());
                continue;
            }
            let c = &rest[pc] / &row[pc];
            if !c.in_a() {
                return None;
            }
            for j in 0..self.ncols {
                if !row[j].is_zero() {
                    rest[j] = &rest[j] - &(&c * &row[j]);
                }
            }
            coords.push(c);
        }
        rest.iter().all(RatFunc::is_zero).then_some(coords)
    }

    pub fn contains(&self, x: &[RatFunc]) -> bool {
        self.coordinates(x).is_some()
    }

    pub fn contains_lattice(&self, other: &DvrBasis) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn same_lattice(&self, other: &DvrBasis) -> bool {
        self.rank() == other.rank() && self.contains_lattice(other) && other.contains_lattice(self)
    }

    /// `self ∩ W` where `W` is the `Q(q)`-span of `subspace`.
    pub fn intersect_subspace(&self, subspace: &[Vec<RatFunc>]) -> DvrBasis {
        let k = self.rank();
        if k == 0 || subspace.is_empty() {
            return DvrBasis::empty(self.ncols);
        }
        // c B - d W = 0
        let cols: Vec<Vec<RatFunc>> =
            self.rows.iter().cloned().chain(subspace.iter().map(|w| w.iter().map(|x| -x).collect())).collect();
        let a: Matrix = (0..self.ncols).map(|j| cols.iter().map(|c| c[j].clone()).collect()).collect();
        let sols = nullspace(a, cols.len());
        let cs: Vec<Vec<RatFunc>> = sols.into_iter().map(|s| s[..k].to_vec()).collect();
        let sat = saturate(&cs, k, false);
        DvrBasis::from_generators(&sat.iter().map(|c| self.combine(c)).collect::<Vec<_>>(), self.ncols)
    }

    /// `self ∩ other`.
    pub fn intersect(&self, other: &DvrBasis) -> DvrBasis {
        let k1 = self.rank();
        let k2 = other.rank();
        if k1 == 0 || k2 == 0 {
            return DvrBasis::empty(self.ncols);
        }
        let cols: Vec<Vec<RatFunc>> = self
            .rows
            .iter()
            .cloned()
            .chain(other.rows.iter().map(|w| w.iter().map(|x| -x).collect()))
            .collect();
        let a: Matrix = (0..self.ncols).map(|j| cols.iter().map(|c| c[j].clone()).collect()).collect();
        let sols = nullspace(a, k1 + k2);
        let sat = saturate(&sols, k1 + k2, false);
        let gens: Vec<Vec<RatFunc>> = sat.iter().map(|s| self.combine(&s[..k1])).collect();
        DvrBasis::from_generators(&gens, self.ncols)
    }

    /// `self + other`.
    pub fn sum(&self, other: &DvrBasis) -> DvrBasis {
        let gens: Vec<_> = self.rows.iter().chain(&other.rows).cloned().collect();
        DvrBasis::from_generators(&gens, self.ncols)
    }

    pub fn scaled(&self, s: &RatFunc) -> DvrBasis {
        let gens: Vec<_> = self.rows.iter().map(|r| r.iter().map(|x| x * s).collect()).collect();
        DvrBasis::from_generators(&gens, self.ncols)
    }

    fn combine(&self, c: &[RatFunc]) -> Vec<RatFunc> {
        let mut out = vec![RatFunc::zero(); self.ncols];
        for (ci, row) in c.iter().zip(&self.rows) {
            if ci.is_zero() {
                continue;
            }
            for j in 0..self.ncols {
                if !row[j].is_zero() {
                    out[j] = &out[j] + &(ci * &row[j]);
                }
            }
        }
        out
    }
}

/// Basis of `W ∩ A^n` where `W` is the `Q(q)`-span of `gens`.
///
/// Rows are taken in order; each is reduced against the earlier output, then divided by an
/// entry of minimal valuation, which becomes its pivot. A prefix of the output therefore
/// saturates the span of the corresponding prefix of the input. `reverse` picks the last
/// column among ties instead of the first.
pub fn saturate(gens: &[Vec<RatFunc>], ncols: usize, reverse: bool) -> Vec<Vec<RatFunc>> {
    let mut out: Vec<Vec<RatFunc>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for g in gens {
        let mut row = g.clone();
        for (prev, &pc) in out.iter().zip(&pivots) {
            if row[pc].is_zero() {
                continue;
            }
            let c = row[pc].clone();
            for j in 0..ncols {
                if !prev[j].is_zero() {
                    row[j] = &row[j] - &(&c * &prev[j]);
                }
            }
        }
        let best = row.iter().map(RatFunc::ord).min().unwrap_or(Valuation::Infinite);
        if best == Valuation::Infinite {
            continue;
        }
        let mut idx: Vec<usize> = (0..ncols).collect();
        if reverse {
            idx.reverse();
        }
        let pc = idx.into_iter().find(|&j| row[j].ord() == best).unwrap();
        let inv = row[pc].inv().unwrap();
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        out.push(row);
        pivots.push(pc);
    }
    out
}

/// Rank over `Q` of the reductions mod `q` of vectors with entries in `A`.
///
/// Panics if an entry is not regular at zero.
pub fn mod_q_rank(vectors: &[Vec<RatFunc>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors
        .iter()
        .map(|v| v.iter().map(|x| x.value_at_zero().expect("entry outside A")).collect())
        .collect();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        let prow = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot;
            for j in c..ncols {
                let d = &f * &prow[j];
                row[j] -= d;
            }
        }
        r += 1;
    }
    r
}
