//! Dense univariate polynomials in `q` with arbitrary-precision integer coefficients.
//!
//! Only the operations needed to keep rational functions in lowest terms live here.
//! The gcd is the expensive part: the polynomials that show up in q-combinatorics are
//! almost always products of cyclotomic factors and powers of `q`, so reduction first
//! tries to certify coprimality modulo a large prime, then strips shared cyclotomic
//! factors, and only falls back to a primitive PRS when something else is shared.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients stored from the constant term upward, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_monomial(&self) -> bool {
        match self.low_order() {
            Some(lo) => lo + 1 == self.coeffs.len(),
            None => false,
        }
    }

    pub fn lowest_coeff(&self) -> Option<&BigInt> {
        self.low_order().map(|i| &self.coeffs[i])
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// gcd of all coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Divides every coefficient by `c`; `c` must divide the content.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    /// Multiplies by `q^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divides by `q^k`; the low `k` coefficients must be zero.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        Poly { coeffs: self.coeffs[k.min(self.coeffs.len())..].to_vec() }
    }

    /// Exact division over the integers. Returns `None` if `divisor` does not divide `self`
    /// in `Z[q]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (quot, rem) = self.div_rem_integral(divisor)?;
        if rem.is_zero() {
            Some(quot)
        } else {
            None
        }
    }

    /// Long division that only succeeds while each leading-coefficient quotient is integral.
    fn div_rem_integral(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading_coeff().unwrap();
        let Some(nd) = self.degree() else {
            return Some((Self::zero(), Self::zero()));
        };
        if nd < dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[i + j] -= &qc * dc;
                }
            }
            quot[i] = qc;
        }
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Pseudo-remainder of `self` by `divisor`.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let top = rem.coeffs[rd].clone();
            let scaled = rem.scale(&lead);
            let sub = divisor.scale(&top).shift_up(rd - dd);
            rem = scaled.sub(&sub);
        }
        rem
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        let p = self.div_scalar_exact(&c);
        if p.leading_coeff().unwrap().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// Primitive gcd over `Z[q]` by the primitive polynomial remainder sequence.
    fn gcd_prs(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    fn to_modp(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        let mut out: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect();
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }
}

const PRIMES: [u64; 3] = [2305843009213693951, 4611686018427387847, 1152921504606846883];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn remmod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = invmod(b[db], p);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = mulmod(r[dr], inv, p);
        if c != 0 {
            for (j, &bc) in b.iter().enumerate() {
                let idx = dr - db + j;
                r[idx] = (r[idx] + p - mulmod(c, bc, p)) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn gcd_modp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = remmod(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Cyclotomic polynomials `Phi_1 .. Phi_MAX_CYCLOTOMIC`, built once.
const MAX_CYCLOTOMIC: usize = 240;

fn cyclotomics() -> &'static [Poly] {
    static TABLE: OnceLock<Vec<Poly>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table: Vec<Poly> = vec![Poly::zero()];
        for k in 1..=MAX_CYCLOTOMIC {
            // q^k - 1 divided by every Phi_d with d | k, d < k
            let mut p = Poly::monomial(BigInt::one(), k).sub(&Poly::one());
            for d in 1..k {
                if k % d == 0 {
                    p = p.div_exact(&table[d]).expect("cyclotomic division is exact");
                }
            }
            table.push(p);
        }
        table
    })
}

/// Degree of gcd modulo a prime not dividing either leading coefficient, together with the
/// modular gcd itself. `None` if every available prime is unlucky.
fn modular_gcd(a: &Poly, b: &Poly) -> Option<(u64, Vec<u64>)> {
    for &p in &PRIMES {
        let am = a.to_modp(p);
        let bm = b.to_modp(p);
        if am.len() != a.coeffs.len() || bm.len() != b.coeffs.len() {
            continue;
        }
        return Some((p, gcd_modp(&am, &bm, p)));
    }
    None
}

/// Reduces `num / den` to lowest terms over `Q[q]`, returning the cancelled pair. Integer
/// content and sign are left to the caller.
pub(crate) fn cancel_common(num: &Poly, den: &Poly) -> (Poly, Poly) {
    let mut num = num.clone();
    let mut den = den.clone();
    // common power of q
    let shift = num.low_order().unwrap().min(den.low_order().unwrap());
    if shift > 0 {
        num = num.shift_down(shift);
        den = den.shift_down(shift);
    }
    if num.is_constant() || den.is_constant() {
        return (num, den);
    }
    if num.is_monomial() || den.is_monomial() {
        // after removing the shared q-power one side is q^j * c and the other has a
        // nonzero constant term, so they are coprime
        return (num, den);
    }
    loop {
        let Some((p, g)) = modular_gcd(&num, &den) else {
            break;
        };
        if g.len() <= 1 {
            return (num, den);
        }
        // strip cyclotomic factors that divide the modular gcd
        let mut progressed = false;
        let gdeg = g.len() - 1;
        for phi in cyclotomics().iter().skip(1) {
            let pd = phi.degree().unwrap();
            if pd > gdeg {
                continue;
            }
            let phim = phi.to_modp(p);
            if !remmod(&g, &phim, p).is_empty() {
                continue;
            }
            while let (Some(n2), Some(d2)) = (num.div_exact(phi), den.div_exact(phi)) {
                num = n2;
                den = d2;
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    // general fallback
    let g = num.gcd_prs(&den);
    if g.degree().unwrap_or(0) > 0 {
        num = num.div_exact(&g).or_else(|| exact_over_q(&num, &g)).unwrap();
        den = den.div_exact(&g).or_else(|| exact_over_q(&den, &g)).unwrap();
    }
    (num, den)
}

/// Division by a primitive factor that is known to divide over `Q`; by Gauss's lemma the
/// quotient is integral, so this only guards against a non-primitive divisor.
fn exact_over_q(a: &Poly, g: &Poly) -> Option<Poly> {
    a.div_exact(&g.primitive_part())
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_i64s(cs)
    }

    #[test]
    fn cyclotomic_table_small() {
        let c = cyclotomics();
        assert_eq!(c[1], p(&[-1, 1]));
        assert_eq!(c[2], p(&[1, 1]));
        assert_eq!(c[4], p(&[1, 0, 1]));
        assert_eq!(c[6], p(&[1, -1, 1]));
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = p(&[-1, 0, 1]);
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(a.div_exact(&p(&[2, 1])), None);
    }

    #[test]
    fn cancel_shared_cyclotomic_and_generic_factors() {
        // (q^2 - 1)(q^2 + 3) / ((q + 1)(q^2 + 3) q)
        let f = p(&[3, 0, 1]);
        let num = p(&[-1, 0, 1]).mul(&f);
        let den = p(&[0, 1, 1]).mul(&f);
        let (n, d) = cancel_common(&num, &den);
        assert_eq!(n, p(&[-1, 1]));
        assert_eq!(d, p(&[0, 1]));
    }

    #[test]
    fn prs_gcd_matches_known_factor() {
        let f = p(&[5, 1, 7]);
        let a = f.mul(&p(&[1, 2]));
        let b = f.mul(&p(&[3, 0, 1]));
        assert_eq!(a.gcd_prs(&b), f);
    }
}
