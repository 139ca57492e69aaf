//! Closed-form bounds: explicit `(r, d)` choices, the plane decomposition
//! `n = s^2 + 2t (+1)`, near-square constructions, and the coprime-pencil
//! family.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{is_perfect_square, isqrt, ratio, Integer, Rational};

/// The three explicit bounds built from `d* = ceil(sqrt(n/l))`,
/// `d_* = floor(sqrt(n/l))`, `r* = ceil(d_* sqrt(n l))`, `r_* = floor(d_* sqrt(n l))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormBounds {
    pub d_upper: u64,
    pub d_lower: u64,
    pub r_upper: Option<u64>,
    pub r_lower: Option<u64>,
    /// `1/d*`
    #[serde(with = "crate::exactmath::serde_rational")]
    pub reciprocal: Rational,
    /// `r_*/(n d_*)`, only for `l <= n`.
    #[serde(with = "crate::exactmath::serde_rational_opt")]
    pub floor_ratio: Option<Rational>,
    /// `d_* l / r*`, only for `l <= n`.
    #[serde(with = "crate::exactmath::serde_rational_opt")]
    pub ceil_ratio: Option<Rational>,
}

impl ClosedFormBounds {
    pub fn values(&self) -> Vec<Rational> {
        let mut v = vec![self.reciprocal.clone()];
        v.extend(self.floor_ratio.clone());
        v.extend(self.ceil_ratio.clone());
        v
    }
}

pub fn closed_form_bounds(n: u64, l: u64) -> Result<ClosedFormBounds> {
    if n == 0 || l == 0 {
        return Err(Error::domain("n and l must be positive"));
    }
    let mut d_lower = isqrt(&BigInt::from(n / l))?.to_string().parse::<u64>().expect("fits");
    while d_lower * d_lower * l > n {
        d_lower -= 1;
    }
    let d_upper = if d_lower * d_lower * l == n { d_lower } else { d_lower + 1 };
    let reciprocal = ratio(1, d_upper);
    if l > n {
        return Ok(ClosedFormBounds {
            d_upper,
            d_lower,
            r_upper: None,
            r_lower: None,
            reciprocal,
            floor_ratio: None,
            ceil_ratio: None,
        });
    }
    let target = BigInt::from(d_lower) * d_lower * n * l;
    let r_lower = isqrt(&target)?;
    let r_upper = if &r_lower * &r_lower == target { r_lower.clone() } else { &r_lower + 1u32 };
    let to_u = |x: &Integer| x.to_string().parse::<u64>().expect("fits");
    Ok(ClosedFormBounds {
        d_upper,
        d_lower,
        r_upper: Some(to_u(&r_upper)),
        r_lower: Some(to_u(&r_lower)),
        reciprocal,
        floor_ratio: Some(ratio(r_lower, BigInt::from(n) * d_lower)),
        ceil_ratio: Some(ratio(BigInt::from(d_lower) * l, r_upper)),
    })
}

/// Cases of the plane (`l = 1`) bounds keyed on `n = s^2 + 2t` or
/// `n = s^2 + 2t + 1` with `s = floor(sqrt n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SquareDecompositionCase {
    /// `n = s^2 + 2t`: `s/(s^2 + t)`.
    EvenOffset,
    /// `n = s^2 + 2t + 1`: `(s^2 + t)/(s (s^2 + 2t + 1))`.
    OddOffset,
    /// `n = s^2 + 2t + 1`, `0 < t < (sqrt2 - 1)(s - 1)`: lower family at `d = s - 1`.
    OddSmallOffset,
    /// `n = s^2 + 2t + 1`, `(sqrt2 - 1)(s - 1) < t < sqrt(1.25 s^2 - s) - s/2`:
    /// upper family at `d = s - 1`.
    OddMediumOffset,
}

impl fmt::Display for SquareDecompositionCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SquareDecompositionCase::EvenOffset => "a",
            SquareDecompositionCase::OddOffset => "b",
            SquareDecompositionCase::OddSmallOffset => "c",
            SquareDecompositionCase::OddMediumOffset => "d",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareDecompositionBound {
    pub case: SquareDecompositionCase,
    pub s: u64,
    pub t: u64,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub value: Rational,
}

/// All applicable plane bounds for `n` from its decomposition around `floor(sqrt n)^2`.
pub fn square_decomposition_bounds(n: u64) -> Result<Vec<SquareDecompositionBound>> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let s = floor_sqrt_u64(n);
    let t = (n - s * s) / 2;
    let mut out = Vec::new();
    let push = |out: &mut Vec<_>, case, value| out.push(SquareDecompositionBound { case, s, t, value });
    if n == s * s + 2 * t {
        push(&mut out, SquareDecompositionCase::EvenOffset, ratio(s, s * s + t));
        return Ok(out);
    }
    // n = s^2 + 2t + 1 with t < s
    push(&mut out, SquareDecompositionCase::OddOffset, ratio(s * s + t, s * (s * s + 2 * t + 1)));
    if s > 1 {
        let sm = s - 1;
        // t < (sqrt2 - 1)(s - 1)  <=>  (t + s - 1)^2 < 2 (s - 1)^2
        let lhs = (t + sm) * (t + sm);
        let rhs = 2 * sm * sm;
        if t > 0 && lhs < rhs {
            push(&mut out, SquareDecompositionCase::OddSmallOffset, ratio(s * sm + t, sm * n));
        }
        // t < sqrt(1.25 s^2 - s) - s/2  <=>  t^2 + t s < s^2 - s
        if lhs > rhs && t * t + t * s < s * s - s {
            push(&mut out, SquareDecompositionCase::OddMediumOffset, ratio(sm, s * sm + t));
        }
    }
    Ok(out)
}

pub(crate) fn floor_sqrt_u64(n: u64) -> u64 {
    isqrt(&BigInt::from(n)).expect("nonnegative").to_string().parse().expect("fits")
}

fn exact_sqrt_u64(n: u64) -> Option<u64> {
    let s = floor_sqrt_u64(n);
    (s * s == n).then_some(s)
}

/// Smallest odd prime factor, if any.
pub fn odd_prime_factor(mut s: u64) -> Option<u64> {
    while s > 0 && s % 2 == 0 {
        s /= 2;
    }
    if s <= 1 {
        return None;
    }
    let mut p = 3;
    while p * p <= s {
        if s % p == 0 {
            return Some(p);
        }
        p += 2;
    }
    Some(s)
}

/// The coprime-pencil family: `n = s^2 + j` with `s = a b`, curve degree
/// `d = a b c` and effective count `r' = c a^2 b^2 + i`.
///
/// Requires `c < a`, `gcd(a, c) = 1`, `0 <= i <= j`. The underlying curve
/// needs the characteristic not to divide `c`; that is recorded as a flag, not
/// checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoprimeFamily {
    pub s: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub i: u64,
    pub j: u64,
}

impl CoprimeFamily {
    /// `c = 2`, `a` the smallest odd prime factor of `s`, `b = s/a`. `None` if
    /// `n` is a square or `floor(sqrt n)` is a power of two.
    pub fn smallest_odd_prime(n: u64, i: u64) -> Option<CoprimeFamily> {
        let s = floor_sqrt_u64(n);
        let j = n - s * s;
        if j == 0 || i > j {
            return None;
        }
        let a = odd_prime_factor(s)?;
        Some(CoprimeFamily { s, a, b: s / a, c: 2, i, j })
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::precondition(m));
        if self.a == 0 || self.b == 0 || self.c == 0 || self.s == 0 || self.j == 0 {
            return fail("s, a, b, c, j must be positive".into());
        }
        if self.a * self.b != self.s {
            return fail(format!("a b = {} differs from s = {}", self.a * self.b, self.s));
        }
        if self.c >= self.a {
            return fail(format!("c = {} must be less than a = {}", self.c, self.a));
        }
        if self.a.gcd(&self.c) != 1 {
            return fail(format!("gcd(a, c) = {} is not 1", self.a.gcd(&self.c)));
        }
        if self.i > self.j {
            return fail(format!("i = {} exceeds j = {}", self.i, self.j));
        }
        Ok(())
    }

    pub fn n(&self) -> u64 {
        self.s * self.s + self.j
    }

    pub fn d(&self) -> u64 {
        self.a * self.b * self.c
    }

    pub fn r_prime(&self) -> u64 {
        self.c * self.s * self.s + self.i
    }

    /// `r'^2 - n d^2`, equal to `a^2 b^2 c (2i - c j) + i^2`.
    pub fn delta(&self) -> Integer {
        let r = BigInt::from(self.r_prime());
        let d = BigInt::from(self.d());
        &r * &r - BigInt::from(self.n()) * &d * &d
    }

    /// `d/r'` when `delta > 0`, `r'/(n d)` when `delta < 0`, `None` when zero.
    pub fn bound(&self) -> Result<Option<Rational>> {
        self.validate()?;
        let delta = self.delta();
        Ok(if delta > Integer::zero() {
            Some(ratio(self.d(), self.r_prime()))
        } else if delta < Integer::zero() {
            Some(ratio(self.r_prime(), self.n() * self.d()))
        } else {
            None
        })
    }

    pub fn flags(&self) -> Vec<String> {
        vec![format!("characteristic does not divide c = {}", self.c)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NearSquareKind {
    /// `n + 2` a square: multiplicity-2 point on a degree `s + 1` curve.
    PlusTwo,
    /// `n + 1` a square: curve with multiplicities `(d-2, 2, 2, 1, ...)`.
    PlusOne,
    /// `n - 1` a square: curve with multiplicities `(d-2, 2, 2, 1, ...)`.
    MinusOne,
    /// `n + 1` a square: coprime pencil with `i = 2s - 1`.
    PlusOnePencil,
    /// `n - 1` a square: coprime pencil with `i = 1`.
    MinusOnePencil,
}

impl fmt::Display for NearSquareKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NearSquareKind::PlusTwo => "n+2 square",
            NearSquareKind::PlusOne => "n+1 square",
            NearSquareKind::MinusOne => "n-1 square",
            NearSquareKind::PlusOnePencil => "n+1 square (pencil)",
            NearSquareKind::MinusOnePencil => "n-1 square (pencil)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearSquareBound {
    pub kind: NearSquareKind,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub value: Rational,
    /// `(r', d)` of the certifying divisor `r' L - d E` or `n d L - r' E`.
    pub r_prime: u64,
    pub d: u64,
    /// Whether the witness lies in the multiplicity-refined family, so the
    /// value cannot exceed the refined bound.
    pub in_refined_family: bool,
    pub flags: Vec<String>,
}

/// Plane bounds (`l = 1`) for `n` next to a square.
pub fn near_square_bounds(n: u64) -> Vec<NearSquareBound> {
    let mut out = Vec::new();
    if let Some(root) = exact_sqrt_u64(n + 2) {
        if root >= 3 {
            let s = root - 1;
            out.push(NearSquareBound {
                kind: NearSquareKind::PlusTwo,
                value: ratio(s + 1, s * s + 2 * s),
                r_prime: n + 1,
                d: s + 1,
                in_refined_family: true,
                flags: Vec::new(),
            });
        }
    }
    if let Some(root) = exact_sqrt_u64(n + 1) {
        if n >= 8 {
            let s = root - 1;
            let d = s + 2;
            let r_prime = n + d - 1;
            out.push(NearSquareBound {
                kind: NearSquareKind::PlusOne,
                value: ratio(s * s + 3 * s + 1, s * (s + 2) * (s + 2)),
                r_prime,
                d,
                in_refined_family: false,
                flags: Vec::new(),
            });
            if let Some(fam) = CoprimeFamily::smallest_odd_prime(n, 2 * s - 1) {
                if let Ok(Some(value)) = fam.bound() {
                    out.push(NearSquareBound {
                        kind: NearSquareKind::PlusOnePencil,
                        value,
                        r_prime: fam.r_prime(),
                        d: fam.d(),
                        in_refined_family: false,
                        flags: fam.flags(),
                    });
                }
            }
        }
    }
    if n >= 10 {
        if let Some(s) = exact_sqrt_u64(n - 1) {
            let d = s + 1;
            out.push(NearSquareBound {
                kind: NearSquareKind::MinusOne,
                value: ratio(s + 1, s * s + s + 1),
                r_prime: n + d - 1,
                d,
                in_refined_family: false,
                flags: Vec::new(),
            });
            if let Some(fam) = CoprimeFamily::smallest_odd_prime(n, 1) {
                if let Ok(Some(value)) = fam.bound() {
                    out.push(NearSquareBound {
                        kind: NearSquareKind::MinusOnePencil,
                        value,
                        r_prime: fam.r_prime(),
                        d: fam.d(),
                        in_refined_family: false,
                        flags: fam.flags(),
                    });
                }
            }
        }
    }
    out
}

/// Bound `b l / r` for `a^2 n` points from a solution of `r^2 - n l d^2 = 1`
/// with `d = a b` and `a > b sqrt(l/n)`.
pub fn scaled_pell_bound(n: u64, l: u64, r: &Integer, d: &Integer, a: u64, b: u64) -> Result<Rational> {
    if n == 0 || l == 0 || a == 0 || b == 0 {
        return Err(Error::precondition("n, l, a, b must be positive"));
    }
    let (n_b, l_b, a_b, b_b) = (BigInt::from(n), BigInt::from(l), BigInt::from(a), BigInt::from(b));
    if *d != &a_b * &b_b {
        return Err(Error::precondition(format!("d = {d} is not a b = {}", a * b)));
    }
    if r * r - &n_b * &l_b * d * d != BigInt::one() {
        return Err(Error::precondition(format!("r^2 - n l d^2 = {} is not 1", r * r - &n_b * &l_b * d * d)));
    }
    if &a_b * &a_b * &n_b <= &b_b * &b_b * &l_b {
        return Err(Error::precondition("a > b sqrt(l/n) fails (a^2 n <= b^2 l)"));
    }
    let points = &a_b * &a_b * &n_b;
    if r * r <= &b_b * &b_b * &points * &l_b {
        return Err(Error::precondition("r^2 > b^2 (a^2 n) l fails"));
    }
    if r > &points {
        return Err(Error::precondition("r <= a^2 n fails"));
    }
    Ok(Rational::new(b_b * l_b, r.clone()))
}

/// Whether `n l` admits the near-square bounds: used by comparison tables.
pub(crate) fn n_pm1_square(n: u64) -> bool {
    is_perfect_square(&BigInt::from(n + 1)) || (n >= 1 && is_perfect_square(&BigInt::from(n - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{epsilon_basic, epsilon_refined};

    #[test]
    fn closed_forms() {
        let c = closed_form_bounds(33, 1).unwrap();
        assert_eq!(c.values(), vec![ratio(1, 6), ratio(28, 165), ratio(5, 29)]);
        let c = closed_form_bounds(16, 1).unwrap();
        assert_eq!(c.values(), vec![ratio(1, 4), ratio(1, 4), ratio(1, 4)]);
        let c = closed_form_bounds(10, 1).unwrap();
        assert_eq!((c.d_upper, c.d_lower, c.r_lower, c.r_upper), (4, 3, Some(9), Some(10)));
        assert_eq!(c.values(), vec![ratio(1, 4), ratio(3, 10), ratio(3, 10)]);
        let c = closed_form_bounds(2, 7).unwrap();
        assert_eq!(c.values(), vec![ratio(1, 1)]);
    }

    #[test]
    fn closed_forms_never_exceed_basic() {
        for n in 1..200 {
            for l in 1..15 {
                let e = epsilon_basic(n, l).unwrap().value;
                for v in closed_form_bounds(n, l).unwrap().values() {
                    assert!(v <= e, "n={n} l={l}");
                }
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let b = square_decomposition_bounds(8).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!((b[0].case, b[0].value.clone()), (SquareDecompositionCase::EvenOffset, ratio(1, 3)));
        let b = square_decomposition_bounds(10).unwrap();
        assert_eq!((b[0].case, b[0].value.clone()), (SquareDecompositionCase::OddOffset, ratio(3, 10)));
        let b = square_decomposition_bounds(28).unwrap();
        let small = b.iter().find(|x| x.case == SquareDecompositionCase::OddSmallOffset).unwrap();
        assert_eq!(small.value, ratio(3, 16));
        assert!(small.value > ratio(13, 70));
        let b = square_decomposition_bounds(25).unwrap();
        assert_eq!(b[0].value, ratio(1, 5));
    }

    #[test]
    fn decomposition_improvements_are_strict_and_bounded() {
        for n in 2..2000 {
            let e = epsilon_basic(n, 1).unwrap().value;
            let bs = square_decomposition_bounds(n).unwrap();
            let base = bs.iter().find(|b| b.case == SquareDecompositionCase::OddOffset).map(|b| b.value.clone());
            for b in &bs {
                assert!(b.value <= e, "n={n} case {}", b.case);
                if matches!(b.case, SquareDecompositionCase::OddSmallOffset | SquareDecompositionCase::OddMediumOffset) {
                    assert!(&b.value > base.as_ref().unwrap(), "n={n}");
                }
            }
        }
    }

    #[test]
    fn near_square_examples() {
        let v = |n| near_square_bounds(n).into_iter().map(|b| (b.kind, b.value)).collect::<Vec<_>>();
        assert_eq!(v(7), vec![(NearSquareKind::PlusTwo, ratio(3, 8))]);
        assert_eq!(v(8), vec![(NearSquareKind::PlusOne, ratio(11, 32))]);
        assert_eq!(
            v(10),
            vec![(NearSquareKind::MinusOne, ratio(4, 13)), (NearSquareKind::MinusOnePencil, ratio(6, 19))]
        );
        assert!(v(11).is_empty());
        // n = 15: s = 3, pencil with i = 5
        let b = near_square_bounds(15);
        assert!(b.iter().any(|x| x.kind == NearSquareKind::PlusOnePencil));
    }

    #[test]
    fn refined_family_bounds_do_not_exceed_refined_value() {
        for n in 2..500 {
            let e = epsilon_refined(n, 1).unwrap().value;
            for b in near_square_bounds(n) {
                if b.in_refined_family {
                    assert!(b.value <= e, "n={n}");
                }
            }
        }
    }

    #[test]
    fn pencil_delta_identity() {
        for s in [3u64, 5, 6, 9, 15] {
            let a = odd_prime_factor(s).unwrap();
            for c in 1..a {
                if a.gcd(&c) != 1 {
                    continue;
                }
                for j in 1..=2 * s {
                    for i in 0..=j {
                        let f = CoprimeFamily { s, a, b: s / a, c, i, j };
                        let (a2b2, c_i, i_i, j_i) = (BigInt::from(s * s), BigInt::from(c), BigInt::from(i), BigInt::from(j));
                        let expect = &a2b2 * &c_i * (BigInt::from(2) * &i_i - &c_i * &j_i) + &i_i * &i_i;
                        assert_eq!(f.delta(), expect);
                    }
                }
            }
        }
    }

    #[test]
    fn pencil_examples() {
        let f = CoprimeFamily { s: 3, a: 3, b: 1, c: 2, i: 1, j: 1 };
        assert_eq!(f.r_prime(), 19);
        assert_eq!(f.bound().unwrap(), Some(ratio(6, 19)));
        let f = CoprimeFamily { s: 3, a: 3, b: 1, c: 2, i: 3, j: 3 };
        assert_eq!(f.delta(), BigInt::from(9));
        assert_eq!(f.bound().unwrap(), Some(ratio(2, 7)));
        let bad = CoprimeFamily { s: 4, a: 2, b: 2, c: 2, i: 1, j: 1 };
        assert!(bad.bound().is_err());
        assert_eq!(CoprimeFamily::smallest_odd_prime(17, 1), None);
    }

    #[test]
    fn odd_primes() {
        assert_eq!(odd_prime_factor(3), Some(3));
        assert_eq!(odd_prime_factor(12), Some(3));
        assert_eq!(odd_prime_factor(8), None);
        assert_eq!(odd_prime_factor(1), None);
        assert_eq!(odd_prime_factor(35), Some(5));
        assert_eq!(odd_prime_factor(49), Some(7));
    }

    #[test]
    fn scaled_pell() {
        let i = BigInt::from;
        assert_eq!(scaled_pell_bound(2, 1, &i(3), &i(2), 2, 1).unwrap(), ratio(1, 3));
        assert_eq!(scaled_pell_bound(19, 1, &i(170), &i(39), 39, 1).unwrap(), ratio(1, 170));
        assert!(scaled_pell_bound(2, 1, &i(3), &i(2), 1, 2).is_err());
        assert!(scaled_pell_bound(2, 1, &i(3), &i(3), 3, 1).is_err());
    }
}
