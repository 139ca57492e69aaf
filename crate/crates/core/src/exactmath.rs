//! Exact integer and rational arithmetic.
//!
//! Every comparison against a square root is decided by squaring both sides
//! after clearing denominators, so no floating point value ever reaches a
//! decision path. Floating point only appears in [`to_decimal`], which is for
//! display.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

/// Normalized arbitrary-precision fraction (positive denominator, reduced).
pub type Rational = BigRational;

pub fn int(v: impl Into<BigInt>) -> Integer {
    v.into()
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    BigRational::new(num.into(), den.into())
}

pub fn rat_int(v: impl Into<BigInt>) -> Rational {
    BigRational::from_integer(v.into())
}

/// `floor(sqrt(x))` by Newton iteration on big integers.
///
/// The iteration starts above the root (from a power of two derived from the
/// bit length) and decreases monotonically; a final correction step guards the
/// invariant `r^2 <= x < (r+1)^2`.
pub fn isqrt(x: &Integer) -> Result<Integer> {
    match x.sign() {
        Sign::Minus => Err(Error::domain(format!("isqrt of negative value {x}"))),
        Sign::NoSign => Ok(Integer::zero()),
        Sign::Plus => {
            let bits = x.bits();
            // 2^ceil(bits/2) > sqrt(x)
            let mut r: Integer = Integer::one() << ((bits + 1) / 2);
            loop {
                let next = (&r + x / &r) >> 1u32;
                if next >= r {
                    break;
                }
                r = next;
            }
            while &r * &r > *x {
                r -= 1;
            }
            while (&r + 1u32) * (&r + 1u32) <= *x {
                r += 1;
            }
            Ok(r)
        }
    }
}

/// `ceil(sqrt(x))` for `x >= 0`.
pub fn ceil_sqrt(x: &Integer) -> Result<Integer> {
    let r = isqrt(x)?;
    if &r * &r == *x {
        Ok(r)
    } else {
        Ok(r + 1u32)
    }
}

pub fn is_perfect_square(x: &Integer) -> bool {
    match isqrt(x) {
        Ok(r) => &r * &r == *x,
        Err(_) => false,
    }
}

/// Sign of `p/q - sqrt(m)`, decided exactly.
pub fn cmp_ratio_vs_sqrt(p: &Integer, q: &Integer, m: &Integer) -> Result<Ordering> {
    if !q.is_positive() {
        return Err(Error::domain("denominator must be positive"));
    }
    if m.is_negative() {
        return Err(Error::domain("radicand must be nonnegative"));
    }
    if p.is_negative() {
        return Ok(Ordering::Less);
    }
    Ok((p * p).cmp(&(q * q * m)))
}

/// Sign of `p/q - sqrt(a/b)` for nonnegative `p`, positive `q`, `b`.
pub fn cmp_ratio_vs_sqrt_ratio(p: &Integer, q: &Integer, a: &Integer, b: &Integer) -> Ordering {
    if p.is_negative() {
        return Ordering::Less;
    }
    (p * p * b).cmp(&(q * q * a))
}

/// Least integer `k` with `sqrt(a_num/a_den) < k < sqrt(b_num/b_den)`, if any.
pub fn integer_in_open_sqrt_interval(
    a_num: &Integer,
    a_den: &Integer,
    b_num: &Integer,
    b_den: &Integer,
) -> Result<Option<Integer>> {
    if !a_den.is_positive() || !b_den.is_positive() {
        return Err(Error::domain("interval denominators must be positive"));
    }
    if a_num.is_negative() || b_num.is_negative() {
        return Err(Error::domain("interval radicands must be nonnegative"));
    }
    // k^2 > a_num/a_den  <=>  k^2 > floor(a_num/a_den)
    let k = isqrt(&a_num.div_floor(a_den))? + 1u32;
    if &k * &k * b_den < *b_num {
        Ok(Some(k))
    } else {
        Ok(None)
    }
}

/// `floor(p/q)` for rationals.
pub fn floor(x: &Rational) -> Integer {
    x.numer().div_floor(x.denom())
}

/// `ceil(p/q)` for rationals.
pub fn ceil(x: &Rational) -> Integer {
    -((-x.numer()).div_floor(x.denom()))
}

/// Decimal rendering with round-half-even at `digits` fractional digits.
pub fn to_decimal(x: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(Integer::from(10u32), digits);
    let scaled = x * Rational::from_integer(scale);
    let (q, r) = scaled.numer().div_mod_floor(scaled.denom());
    let twice = &r * 2u32;
    let den = scaled.denom();
    let rounded = match twice.cmp(den) {
        Ordering::Less => q,
        Ordering::Greater => q + 1u32,
        Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1u32
            }
        }
    };
    let neg = rounded.is_negative();
    let digits_str = rounded.abs().to_string();
    let body = if digits == 0 {
        digits_str
    } else {
        let padded = format!("{:0>width$}", digits_str, width = digits + 1);
        let (whole, frac) = padded.split_at(padded.len() - digits);
        format!("{whole}.{frac}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

/// Parses `"p/q"`, `"p"`, or a finite decimal such as `"3.1"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: Integer = n.trim().parse().map_err(|_| bad())?;
        let d: Integer = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = whole.starts_with('-');
        let whole_abs = whole.trim_start_matches(['-', '+']);
        let w: Integer = if whole_abs.is_empty() { Integer::zero() } else { whole_abs.parse().map_err(|_| bad())? };
        let f: Integer = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(Integer::from(10u32), frac.len());
        let v = Rational::new(w * &scale + f, scale);
        return Ok(if neg { -v } else { v });
    }
    let n: Integer = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Serde adapter storing a [`Rational`] as its `"p/q"` string.
pub mod serde_rational {
    use super::{parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(D::Error::custom)
    }
}

/// Serde adapter for a vector of rationals stored as strings.
pub mod serde_rational_vec {
    use super::{parse_rational, Rational};
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter().map(|s| parse_rational(s).map_err(D::Error::custom)).collect()
    }
}

/// Serde adapter for an optional rational stored as a string or `null`.
pub mod serde_rational_opt {
    use super::{parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_some(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let raw = Option::<String>::deserialize(d)?;
        raw.map(|s| parse_rational(&s).map_err(D::Error::custom)).transpose()
    }
}
