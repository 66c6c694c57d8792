use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;

use super::{Laurent, RatFunc};

/// `[n] = (q^n - q^-n) / (q - q^-1)` as a Laurent polynomial.
pub(crate) fn q_int_laurent(n: i64) -> Laurent {
    if n == 0 {
        return Laurent::zero();
    }
    let m = n.unsigned_abs() as usize;
    let sign = if n < 0 { -1 } else { 1 };
    // q^(m-1) + q^(m-3) + ... + q^(1-m)
    let mut coeffs = vec![BigInt::from(0); 2 * m - 1];
    for i in (0..2 * m - 1).step_by(2) {
        coeffs[i] = BigInt::from(sign);
    }
    Laurent::new(1 - m as i64, coeffs)
}

/// The q-integer `[n]`, defined for every integer `n`; `[-n] = -[n]`.
pub fn q_int(n: i64) -> RatFunc {
    q_int_laurent(n).to_ratfunc()
}

fn factorial_cache() -> &'static Mutex<HashMap<u64, Laurent>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Laurent>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn q_factorial_laurent(n: u64) -> Laurent {
    if let Some(l) = factorial_cache().lock().unwrap().get(&n) {
        return l.clone();
    }
    let mut acc = Laurent::one();
    for i in 1..=n {
        acc = acc.mul(&q_int_laurent(i as i64));
    }
    factorial_cache().lock().unwrap().insert(n, acc.clone());
    acc
}

/// `[n]!`; for negative arguments `[-k]! = (-1)^k [k]!`.
pub fn q_factorial(n: i64) -> RatFunc {
    let k = n.unsigned_abs();
    let f = q_factorial_laurent(k);
    if n < 0 && k % 2 == 1 {
        f.neg().to_ratfunc()
    } else {
        f.to_ratfunc()
    }
}

fn binom_nonneg(m: u64, n: u64) -> Laurent {
    if n > m {
        return Laurent::zero();
    }
    let n = n.min(m - n);
    // row-by-row q-Pascal: [m, j] = q^j [m-1, j] + q^-(m-j) [m-1, j-1]
    let mut row = vec![Laurent::one()];
    for r in 1..=m {
        let width = (r.min(n) + 1) as usize;
        let mut next = Vec::with_capacity(width);
        for j in 0..width as u64 {
            let left = row.get(j as usize).map(|x| x.shift(j as i64)).unwrap_or_else(Laurent::zero);
            let right = if j == 0 {
                Laurent::zero()
            } else {
                row[(j - 1) as usize].shift(-((r - j) as i64))
            };
            next.push(left.add(&right));
        }
        row = next;
    }
    row.swap_remove(n as usize)
}

/// `[m]...[m-n+1] / [n]!` for any integer `m` and `n >= 0`; zero when `n < 0`.
pub fn q_binomial(m: i64, n: i64) -> RatFunc {
    if n < 0 {
        return RatFunc::zero();
    }
    if m >= 0 {
        return binom_nonneg(m as u64, n as u64).to_ratfunc();
    }
    let b = binom_nonneg((n - m - 1) as u64, n as u64);
    if n % 2 == 1 { b.neg() } else { b }.to_ratfunc()
}
