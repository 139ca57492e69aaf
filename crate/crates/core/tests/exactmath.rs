use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use seshadri::exactmath::{
    ceil, ceil_sqrt, cmp_ratio_vs_sqrt, floor, int, integer_in_open_sqrt_interval, is_perfect_square, isqrt,
    parse_rational, ratio, to_decimal,
};
use seshadri::Rational;

#[test]
fn isqrt_brackets_every_small_integer() {
    for x in 0..=1_000_000u64 {
        let s = isqrt(&int(x)).unwrap().to_u64().unwrap();
        assert!(s * s <= x && x < (s + 1) * (s + 1), "x = {x}");
    }
}

fn rat() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..10_000).prop_map(|(p, q)| ratio(p, q))
}

proptest! {
    #[test]
    fn isqrt_brackets_large(x in any::<u128>()) {
        let x = BigInt::from(x) * BigInt::from(x.wrapping_add(7));
        let s = isqrt(&x).unwrap();
        prop_assert!(&s * &s <= x);
        prop_assert!((&s + 1u32) * (&s + 1u32) > x);
        let c = ceil_sqrt(&x).unwrap();
        prop_assert!(&c * &c >= x);
        prop_assert_eq!(is_perfect_square(&x), c == s);
    }

    #[test]
    fn squares_are_detected(k in 0u64..u64::MAX) {
        let x = BigInt::from(k) * BigInt::from(k);
        prop_assert!(is_perfect_square(&x));
        prop_assert_eq!(isqrt(&x).unwrap(), BigInt::from(k));
        if k > 1 {
            prop_assert!(!is_perfect_square(&(x + 1u32)));
        }
    }

    #[test]
    fn sqrt_comparison_matches_floats(p in 0u64..1_000_000, q in 1u64..1_000_000, m in 0u64..1_000_000) {
        let exact = cmp_ratio_vs_sqrt(&int(p), &int(q), &int(m)).unwrap();
        let gap = p as f64 / q as f64 - (m as f64).sqrt();
        if gap.abs() > 1e-6 {
            let float = if gap > 0.0 { Ordering::Greater } else { Ordering::Less };
            prop_assert_eq!(exact, float);
        }
    }

    #[test]
    fn rational_field_laws(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a + &b, &b + &a);
        let reduced = Rational::new(a.numer().clone(), a.denom().clone());
        prop_assert_eq!(&reduced, &a);
        prop_assert!(a.denom() > &BigInt::zero());
    }

    #[test]
    fn parse_inverts_display(a in rat()) {
        prop_assert_eq!(parse_rational(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn floor_and_ceil_bracket(a in rat()) {
        let f = Rational::from_integer(floor(&a));
        let c = Rational::from_integer(ceil(&a));
        prop_assert!(f <= a && a <= c);
        prop_assert!(&c - &f <= Rational::one());
    }

    #[test]
    fn decimal_rendering_is_close(a in rat(), digits in 0usize..8) {
        let text = to_decimal(&a, digits);
        let shown: f64 = text.parse().unwrap();
        let exact = a.to_f64().unwrap();
        prop_assert!((shown - exact).abs() <= 0.5 * 10f64.powi(-(digits as i32)) + 1e-9, "{} -> {}", a, text);
        if digits > 0 {
            prop_assert_eq!(text.split('.').nth(1).unwrap().len(), digits);
        }
    }

    #[test]
    fn open_interval_integers(a in 1u64..10_000, b in 1u64..100, c in 1u64..10_000, d in 1u64..100) {
        // Least integer strictly inside (sqrt(a/b), sqrt(c/d)), if any.
        let hit = integer_in_open_sqrt_interval(&int(a), &int(b), &int(c), &int(d)).unwrap();
        let lo = (a as f64 / b as f64).sqrt();
        let hi = (c as f64 / d as f64).sqrt();
        let mut expect = None;
        let mut k = lo.floor() as u64;
        while (k as f64) < hi + 1.0 {
            let kk = (k * k) as u128;
            if kk * b as u128 > a as u128 && kk * (d as u128) < c as u128 {
                expect = Some(int(k));
                break;
            }
            k += 1;
        }
        prop_assert_eq!(hit, expect);
    }
}

#[test]
fn decimal_rounds_half_to_even() {
    assert_eq!(to_decimal(&ratio(1, 8), 2), "0.12");
    assert_eq!(to_decimal(&ratio(3, 8), 2), "0.38");
    assert_eq!(to_decimal(&ratio(-5, 2), 0), "-2");
    assert_eq!(to_decimal(&ratio(1200, 19), 1), "63.2");
}

#[test]
fn parse_rejects_garbage() {
    for bad in ["", "1/0", "x", "1/2/3", "1.2.3"] {
        assert!(parse_rational(bad).is_err(), "{bad:?}");
    }
    assert_eq!(parse_rational(" 31/10 ").unwrap(), ratio(31, 10));
    assert_eq!(parse_rational("3.1").unwrap(), ratio(31, 10));
}
