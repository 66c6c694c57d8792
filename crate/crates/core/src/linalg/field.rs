//! Gaussian elimination over `Q(q)`.

use crate::qq::RatFunc;

pub type Matrix = Vec<Vec<RatFunc>>;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(mut a: Matrix, ncols: usize) -> (Matrix, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        // prefer the simplest nonzero entry to keep intermediate expressions small
        let Some(p) = (r..a.len()).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].weight()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().unwrap();
        if !inv.is_one() {
            for x in a[r].iter_mut().skip(c) {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in c..ncols {
                if !pivot_row[j].is_zero() {
                    row[j] = &row[j] - &(&factor * &pivot_row[j]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(a: Matrix, ncols: usize) -> usize {
    rref(a, ncols).1.len()
}

/// Basis of `{x : A x = 0}` for an `m x ncols` matrix `A`.
pub fn nullspace(a: Matrix, ncols: usize) -> Vec<Vec<RatFunc>> {
    let (r, pivots) = rref(a, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![RatFunc::zero(); ncols];
        v[free] = RatFunc::one();
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = -&row[free];
        }
        out.push(v);
    }
    out
}

/// One solution of `A x = b` with free variables set to zero, or `None` if inconsistent.
pub fn solve(a: &Matrix, b: &[RatFunc], ncols: usize) -> Option<Vec<RatFunc>> {
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![RatFunc::zero(); ncols];
    for (row, &pc) in r.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

/// Transpose of a list of column vectors into a row-major matrix with `nrows` rows.
pub fn columns_to_matrix(cols: &[Vec<RatFunc>], nrows: usize) -> Matrix {
    (0..nrows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

/// Product of an `m x k` matrix with a `k x p` matrix.
pub fn mat_mul(a: &Matrix, b: &Matrix, p: usize) -> Matrix {
    a.iter()
        .map(|row| {
            (0..p)
                .map(|j| {
                    let mut acc = RatFunc::zero();
                    for (x, brow) in row.iter().zip(b) {
                        if !x.is_zero() && !brow[j].is_zero() {
                            acc = &acc + &(x * &brow[j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, x: &[RatFunc]) -> Vec<RatFunc> {
    a.iter()
        .map(|row| {
            let mut acc = RatFunc::zero();
            for (c, xi) in row.iter().zip(x) {
                if !c.is_zero() && !xi.is_zero() {
                    acc = &acc + &(c * xi);
                }
            }
            acc
        })
        .collect()
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { RatFunc::one() } else { RatFunc::zero() }).collect()).collect()
}

/// Inverse of a square matrix, or `None` if it is singular.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let aug: Matrix = a
        .iter()
        .zip(identity(n))
        .map(|(row, id)| {
            let mut r = row.clone();
            r.extend(id);
            r
        })
        .collect();
    let (r, pivots) = rref(aug, 2 * n);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Basis of the intersection of the spans of two lists of vectors of length `ncols`.
pub fn intersect_spans(a: &[Vec<RatFunc>], b: &[Vec<RatFunc>], ncols: usize) -> Vec<Vec<RatFunc>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let cols: Vec<Vec<RatFunc>> = a.iter().cloned().chain(b.iter().map(|v| v.iter().map(|x| -x).collect())).collect();
    let m = columns_to_matrix(&cols, ncols);
    let combos = nullspace(m, cols.len());
    let vecs: Vec<Vec<RatFunc>> = combos
        .iter()
        .map(|c| {
            let mut v = vec![RatFunc::zero(); ncols];
            for (ci, ai) in c.iter().zip(a) {
                if ci.is_zero() {
                    continue;
                }
                for j in 0..ncols {
                    if !ai[j].is_zero() {
                        v[j] = &v[j] + &(ci * &ai[j]);
                    }
                }
            }
            v
        })
        .collect();
    rref(vecs, ncols).0
}
