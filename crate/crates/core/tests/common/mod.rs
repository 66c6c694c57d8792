#![allow(dead_code)]

use enright::decomp::TwistedPresentation;
use enright::linalg::{mat_mul, Matrix};
use enright::qq::RatFunc;
use enright::rep::ModuleShape;
use rand::Rng;

fn entry(rng: &mut impl Rng, integral: bool) -> RatFunc {
    let c = RatFunc::from_int(rng.gen_range(-2..=2));
    let low = if integral { 0 } else { -1 };
    let e = RatFunc::q_pow(rng.gen_range(low..=2));
    let x = &c * &e;
    if rng.gen_bool(0.3) {
        &x * &(&RatFunc::one() + &RatFunc::q())
    } else {
        x
    }
}

fn diagonal(rng: &mut impl Rng, integral: bool) -> RatFunc {
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let unit = if rng.gen_bool(0.5) { RatFunc::one() } else { &RatFunc::one() + &RatFunc::q_pow(rng.gen_range(1..=2)) };
    let e = if integral { 0 } else { rng.gen_range(-1..=1) };
    &(&RatFunc::from_int(sign) * &unit) * &RatFunc::q_pow(e)
}

/// Random invertible matrix `L U`. With `integral` set it is invertible over `A`.
pub fn random_matrix(rng: &mut impl Rng, d: usize, integral: bool) -> Matrix {
    let lower: Matrix = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => RatFunc::one(),
                    std::cmp::Ordering::Greater => entry(rng, integral),
                    std::cmp::Ordering::Less => RatFunc::zero(),
                })
                .collect()
        })
        .collect();
    let upper: Matrix = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => diagonal(rng, integral),
                    std::cmp::Ordering::Less => entry(rng, integral),
                    std::cmp::Ordering::Greater => RatFunc::zero(),
                })
                .collect()
        })
        .collect();
    mat_mul(&lower, &upper, d)
}

/// Twist of every weight in `weights` that has at least one slot.
pub fn random_twist(rng: &mut impl Rng, base: &ModuleShape, weights: std::ops::RangeInclusive<i64>, integral: bool) -> TwistedPresentation {
    let mut p = TwistedPresentation::identity(base.clone());
    for w in weights {
        let d = base.weight_slots(w).len();
        if d > 0 {
            p = p.with_twist(w, random_matrix(rng, d, integral));
        }
    }
    p
}
