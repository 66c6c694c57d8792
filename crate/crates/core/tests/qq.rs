use enright::qq::{q_binomial, q_factorial, q_int, RatFunc, Valuation};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

fn laurent_strategy() -> impl Strategy<Value = RatFunc> {
    (-4i64..4, prop::collection::vec(-5i64..6, 1..5)).prop_map(|(low, cs)| RatFunc::laurent_i64(low, &cs))
}

fn ratfunc_strategy() -> impl Strategy<Value = RatFunc> {
    (laurent_strategy(), laurent_strategy()).prop_map(|(a, b)| if b.is_zero() { a } else { &a / &b })
}

fn ord(x: &RatFunc) -> i64 {
    x.ord().finite().unwrap()
}

#[test]
fn half_plus_half_identity() {
    let one = RatFunc::one();
    let a = &one / &(&one + &RatFunc::q_pow(2));
    let b = &one / &(&one + &RatFunc::q_pow(-2));
    assert_eq!(&a + &b, one);
}

#[test]
fn q_int_small_values() {
    assert_eq!(q_int(0), RatFunc::zero());
    assert_eq!(q_int(1), RatFunc::one());
    assert_eq!(q_int(2), &RatFunc::q() + &RatFunc::q_pow(-1));
    assert_eq!(q_int(-3), -q_int(3));
    // closed form
    let q = RatFunc::q();
    let qi = RatFunc::q_pow(-1);
    for n in -6..=6 {
        let closed = &(&RatFunc::q_pow(n) - &RatFunc::q_pow(-n)) / &(&q - &qi);
        assert_eq!(q_int(n), closed, "n = {n}");
    }
}

#[test]
fn q_numbers_orders_and_leading_terms() {
    for n in 1..=12i64 {
        let x = q_int(n);
        assert_eq!(ord(&x), -n + 1);
        assert!(x.leading_coeff().is_one());
        let f = q_factorial(n);
        assert_eq!(ord(&f), -n * (n - 1) / 2);
        assert!(f.leading_coeff().is_one());
        for m in n..=12 {
            let b = q_binomial(m, n);
            assert_eq!(ord(&b), -n * (m - n), "binom({m},{n})");
            assert!(b.leading_coeff().is_one());
        }
    }
}

#[test]
fn negative_factorials_and_binomials() {
    for k in 0..8i64 {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        assert_eq!(q_factorial(-k), &RatFunc::from_int(sign) * &q_factorial(k));
    }
    // direct product definition for negative tops
    for m in -6..=6i64 {
        for n in 0..=5i64 {
            let mut num = RatFunc::one();
            for i in 0..n {
                num = &num * &q_int(m - i);
            }
            assert_eq!(q_binomial(m, n), &num / &q_factorial(n), "binom({m},{n})");
        }
    }
}

#[test]
fn large_factorial_quotient_reduces() {
    let a = q_factorial(32);
    let b = q_factorial(30);
    assert_eq!(&a / &b, &q_int(32) * &q_int(31));
}

#[test]
fn zero_has_infinite_order() {
    assert_eq!(RatFunc::zero().ord(), Valuation::Infinite);
    assert!(RatFunc::zero().in_a());
    assert!(!RatFunc::zero().is_unit_a());
    assert!(RatFunc::one().checked_div(&RatFunc::zero()).is_err());
}

#[test]
fn report_fields() {
    let x: RatFunc = "(2*q^3 + 1) / (q^2 - 3*q)".parse().unwrap();
    let r = x.report();
    assert_eq!(r.ord, Valuation::Finite(-1));
    assert!(!r.in_a);
    assert_eq!(r.leading_coeff, BigRational::new(BigInt::from(-1), BigInt::from(3)));
}

#[test]
fn display_examples() {
    assert_eq!(RatFunc::laurent_i64(0, &[1, -1, 3]).to_string(), "3*q^2 - q + 1");
    assert_eq!(RatFunc::q_pow(-2).to_string(), "1 / q^2");
    assert_eq!(q_int(2).to_string(), "(q^2 + 1) / q");
    assert_eq!(RatFunc::from_int(-7).to_string(), "-7");
}

proptest! {
    #[test]
    fn field_axioms(a in ratfunc_strategy(), b in ratfunc_strategy(), c in ratfunc_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn valuation_is_additive(a in ratfunc_strategy(), b in ratfunc_strategy()) {
        if !a.is_zero() && !b.is_zero() {
            prop_assert_eq!(ord(&(&a * &b)), ord(&a) + ord(&b));
            prop_assert_eq!((&a * &b).leading_coeff(), a.leading_coeff() * b.leading_coeff());
        }
        let s = &a + &b;
        prop_assert!(s.ord() >= a.ord().min(b.ord()));
    }

    #[test]
    fn print_parse_roundtrip(a in ratfunc_strategy()) {
        let s = a.to_string();
        let back: RatFunc = s.parse().unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), s);
        let json = serde_json::to_string(&a).unwrap();
        let de: RatFunc = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(de, a);
    }

    #[test]
    fn normal_form_is_canonical(a in ratfunc_strategy(), k in 1i64..5) {
        // same value built two ways gives identical parts
        let scaled = &(&a * &RatFunc::from_int(k)) / &RatFunc::from_int(k);
        prop_assert_eq!(scaled.numerator(), a.numerator());
        prop_assert_eq!(scaled.denominator(), a.denominator());
        if let Some(c) = a.denominator().lowest_coeff() {
            prop_assert!(c > &BigInt::from(0));
        }
    }
}
