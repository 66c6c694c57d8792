use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{cancel_common, Poly};
use super::QqError;

/// Valuation at `q = 0`. The zero function has its own variant so nobody does arithmetic
/// with a stand-in integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Local data of a rational function at `q = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QScalarReport {
    pub ord: Valuation,
    pub in_a: bool,
    pub is_unit_a: bool,
    /// Coefficient of `q^ord` in the Laurent expansion; zero for the zero function.
    #[serde(with = "rational_string")]
    pub leading_coeff: BigRational,
}

mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of `Q(q)` stored as `num / den` with integer-coefficient polynomials.
///
/// Normal form: `num` and `den` are coprime over `Q[q]`, the integer gcd of all their
/// coefficients is one, and the lowest nonzero coefficient of `den` is positive. Zero is
/// `0 / 1`. Two equal values therefore have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_polys(Poly::constant(r.numer().clone()), Poly::constant(r.denom().clone()))
            .expect("rational denominators are nonzero")
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(BigInt::one(), k)
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if k >= 0 {
            RatFunc { num: Poly::monomial(c, k as usize), den: Poly::one() }
        } else {
            RatFunc { num: Poly::constant(c), den: Poly::monomial(BigInt::one(), (-k) as usize) }
        }
    }

    /// Laurent polynomial `sum_i coeffs[i] q^(low + i)`.
    pub fn laurent(low: i64, coeffs: Vec<BigInt>) -> Self {
        let p = Poly::from_coeffs(coeffs);
        if p.is_zero() {
            return Self::zero();
        }
        if low >= 0 {
            Self::from_polys(p.shift_up(low as usize), Poly::one()).unwrap()
        } else {
            Self::from_polys(p, Poly::monomial(BigInt::one(), (-low) as usize)).unwrap()
        }
    }

    pub fn laurent_i64(low: i64, coeffs: &[i64]) -> Self {
        Self::laurent(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_polys(num: Poly, den: Poly) -> Result<Self, QqError> {
        if den.is_zero() {
            return Err(QqError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = cancel_common(&num, &den);
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        if den.lowest_coeff().unwrap().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RatFunc { num, den }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True for a nonzero rational constant.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn inv(&self) -> Result<Self, QqError> {
        if self.is_zero() {
            return Err(QqError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, QqError> {
        if other.is_zero() {
            return Err(QqError::DivisionByZero);
        }
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, QqError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Order of vanishing at `q = 0`.
    pub fn ord(&self) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinite;
        }
        let n = self.num.low_order().unwrap() as i64;
        let d = self.den.low_order().unwrap() as i64;
        Valuation::Finite(n - d)
    }

    /// Coefficient of `q^ord` in the Laurent expansion at zero.
    pub fn leading_coeff(&self) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        BigRational::new(self.num.lowest_coeff().unwrap().clone(), self.den.lowest_coeff().unwrap().clone())
    }

    /// Membership in the ring of functions regular at zero.
    pub fn in_a(&self) -> bool {
        self.ord() >= Valuation::Finite(0)
    }

    /// Membership in the unit group of that ring.
    pub fn is_unit_a(&self) -> bool {
        self.ord() == Valuation::Finite(0)
    }

    pub fn report(&self) -> QScalarReport {
        QScalarReport {
            ord: self.ord(),
            in_a: self.in_a(),
            is_unit_a: self.is_unit_a(),
            leading_coeff: self.leading_coeff(),
        }
    }

    /// Value at `q = 0` when the function is regular there.
    pub fn value_at_zero(&self) -> Option<BigRational> {
        match self.ord() {
            Valuation::Infinite => Some(BigRational::zero()),
            Valuation::Finite(v) if v > 0 => Some(BigRational::zero()),
            Valuation::Finite(0) => Some(self.leading_coeff()),
            Valuation::Finite(_) => None,
        }
    }

    /// Splits a nonzero value as `q^ord * unit`, returning `(ord, unit)`.
    pub fn split_unit(&self) -> Option<(i64, RatFunc)> {
        let v = self.ord().finite()?;
        Some((v, self * &RatFunc::q_pow(-v)))
    }

    /// Rough size used to prefer simple pivots.
    pub(crate) fn weight(&self) -> usize {
        self.num.coeffs().len() + self.den.coeffs().len()
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::normalize(self.num.add(&rhs.num), self.den.clone());
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        RatFunc::normalize(num, self.den.mul(&rhs.den))
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        // cross-cancel first so the reduction works on smaller factors
        let (a, d) = cancel_common(&self.num, &rhs.den);
        let (c, b) = cancel_common(&rhs.num, &self.den);
        RatFunc::normalize(a.mul(&c), b.mul(&d))
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    /// Panics on a zero divisor; use [`RatFunc::checked_div`] when that can happen.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero in Q(q)")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<RatFunc> for &'a RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &RatFunc) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&RatFunc> for RatFunc {
    fn mul_assign(&mut self, rhs: &RatFunc) {
        *self = &*self * rhs;
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        RatFunc::from_int(c)
    }
}

// ---------------------------------------------------------------------------
// text form
// ---------------------------------------------------------------------------

fn write_poly(p: &Poly, out: &mut String) {
    if p.is_zero() {
        out.push('0');
        return;
    }
    let mut first = true;
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        first = false;
        match i {
            0 => out.push_str(&mag.to_string()),
            _ => {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push('q');
                if i > 1 {
                    out.push('^');
                    out.push_str(&i.to_string());
                }
            }
        }
    }
}

fn poly_term_count(p: &Poly) -> usize {
    p.coeffs().iter().filter(|c| !c.is_zero()).count()
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let paren_num = !self.den.is_one() && poly_term_count(&self.num) > 1;
        if paren_num {
            s.push('(');
        }
        write_poly(&self.num, &mut s);
        if paren_num {
            s.push(')');
        }
        if !self.den.is_one() {
            s.push_str(" / ");
            let paren_den = poly_term_count(&self.den) > 1
                || self.den.lowest_coeff().is_some_and(|c| !c.is_one()) && !self.den.is_constant();
            if paren_den {
                s.push('(');
            }
            write_poly(&self.den, &mut s);
            if paren_den {
                s.push(')');
            }
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// Parses a Laurent polynomial like `3*q^2 - q + 1 - 2*q^-3`.
fn parse_laurent(src: &str) -> Result<RatFunc, QqError> {
    let err = || QqError::Parse(src.to_string());
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(&s).to_string();
    if s.is_empty() {
        return Err(err());
    }
    let bytes = s.as_bytes();
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut start = 0;
    let mut neg = false;
    let mut i = 0;
    if bytes[0] == b'+' || bytes[0] == b'-' {
        neg = bytes[0] == b'-';
        start = 1;
        i = 1;
    }
    while i < bytes.len() {
        let c = bytes[i];
        if (c == b'+' || c == b'-') && i > start && bytes[i - 1] != b'^' {
            terms.push((neg, s[start..i].to_string()));
            neg = c == b'-';
            start = i + 1;
        }
        i += 1;
    }
    terms.push((neg, s[start..].to_string()));

    let mut acc = RatFunc::zero();
    for (neg, t) in terms {
        if t.is_empty() {
            return Err(err());
        }
        let (coeff, exp) = if let Some(pos) = t.find('q') {
            let cpart = &t[..pos];
            let coeff = if cpart.is_empty() {
                BigInt::one()
            } else {
                let cpart = cpart.strip_suffix('*').ok_or_else(err)?;
                cpart.parse::<BigInt>().map_err(|_| err())?
            };
            let rest = &t[pos + 1..];
            let exp = if rest.is_empty() {
                1
            } else {
                let e = rest.strip_prefix('^').ok_or_else(err)?;
                let e = e.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(e);
                e.parse::<i64>().map_err(|_| err())?
            };
            (coeff, exp)
        } else {
            (t.parse::<BigInt>().map_err(|_| err())?, 0)
        };
        let term = RatFunc::monomial(if neg { -coeff } else { coeff }, exp);
        acc += &term;
    }
    Ok(acc)
}

fn split_top_level_slash(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some((&s[..i], &s[i + 1..])),
            _ => {}
        }
    }
    None
}

impl FromStr for RatFunc {
    type Err = QqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match split_top_level_slash(s) {
            Some((n, d)) => {
                let n = parse_laurent(n)?;
                let d = parse_laurent(d)?;
                n.checked_div(&d)
            }
            None => parse_laurent(s),
        }
    }
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
