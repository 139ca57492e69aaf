//! Certified lower bounds for multipoint Seshadri constants.
//!
//! For a polarization with self-intersection `l` and `n` points, the basic
//! bound is the maximum of two finite families of ratios:
//!
//! * `r/(n d)` with `1 <= r <= n`, `d >= 1` and `r/d <= sqrt(n l)`
//! * `d l / r` with `1 <= r <= n`, `d >= 1` and `r/d >= sqrt(n l)`
//!
//! The refined bound also lets a curve carry a point of multiplicity
//! `1 <= m <= max(1, d - 1)`, replacing `r` by `r + m - 1` in both families.
//!
//! When `l <= n` and `n l` is a perfect square the bound is `sqrt(l/n)`, which
//! is rational but only approached as a supremum; [`SeshadriBound`] marks this
//! with `square_case`.

mod compare;
mod pell;
mod special;

pub use compare::{compare_references, Comparison, ReferenceRow};
pub use pell::{pell_fundamental, pell_plus_one, PellSolution};
pub(crate) use special::floor_sqrt_u64;
pub use special::{
    closed_form_bounds, near_square_bounds, odd_prime_factor, scaled_pell_bound, square_decomposition_bounds,
    ClosedFormBounds, CoprimeFamily, NearSquareBound, NearSquareKind, SquareDecompositionBound,
    SquareDecompositionCase,
};

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{ceil_sqrt, is_perfect_square, isqrt, ratio, Integer, Rational};

/// Which family a witness belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SetTag {
    /// `r/(n d)` with `r/d <= sqrt(n l)`.
    S1,
    /// `d l / r` with `r/d >= sqrt(n l)`.
    S2,
    /// `(r+m-1)/(n d)` in the multiplicity-refined family.
    S1Prime,
    /// `d l / (r+m-1)` in the multiplicity-refined family.
    S2Prime,
}

impl SetTag {
    pub fn is_refined(self) -> bool {
        matches!(self, SetTag::S1Prime | SetTag::S2Prime)
    }

    pub fn is_lower_family(self) -> bool {
        matches!(self, SetTag::S1 | SetTag::S1Prime)
    }
}

impl fmt::Display for SetTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetTag::S1 => "S1",
            SetTag::S2 => "S2",
            SetTag::S1Prime => "S1′",
            SetTag::S2Prime => "S2′",
        })
    }
}

/// One member of a bound family together with its value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundWitness {
    pub r: u64,
    pub d: u64,
    /// Multiplicity at the first point; always 1 for the unrefined families.
    pub m: u64,
    pub tag: SetTag,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub value: Rational,
}

impl BoundWitness {
    /// The effective point count `r + m - 1`.
    pub fn effective_r(&self) -> u64 {
        self.r + self.m - 1
    }

    /// Re-derives the value from `(r, d, m, tag)` and checks family membership
    /// against `(n, l)`.
    pub fn verify(&self, n: u64, l: u64) -> bool {
        if self.d == 0 || self.r == 0 || self.m == 0 || self.r > n {
            return false;
        }
        if self.tag.is_refined() {
            if self.m > max_multiplicity(self.d) {
                return false;
            }
        } else if self.m != 1 {
            return false;
        }
        let big_r = BigInt::from(self.effective_r());
        let d = BigInt::from(self.d);
        let rr = &big_r * &big_r;
        let ndl = BigInt::from(n) * &d * &d * l;
        if self.tag.is_lower_family() {
            rr <= ndl && self.value == ratio(big_r, BigInt::from(n) * &d)
        } else {
            rr >= ndl && self.value == ratio(d * l, big_r)
        }
    }
}

impl fmt::Display for BoundWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tag.is_refined() {
            write!(f, "r={} d={} m={} {}", self.r, self.d, self.m, self.tag)
        } else {
            write!(f, "r={} d={} {}", self.r, self.d, self.tag)
        }
    }
}

/// Result of a bound computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeshadriBound {
    pub n: u64,
    pub l: u64,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub value: Rational,
    pub witness: Option<BoundWitness>,
    /// `l <= n` and `n l` is a square: `value = sqrt(l/n)` is a supremum.
    pub square_case: bool,
    pub refined: bool,
}

impl fmt::Display for SeshadriBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)?;
        if self.square_case {
            write!(f, " [square case: supremum]")
        } else if let Some(w) = &self.witness {
            write!(f, " (witness {w})")
        } else {
            Ok(())
        }
    }
}

/// `f(d) = max(1, d - 1)`: the largest multiplicity the refined families allow.
pub fn max_multiplicity(d: u64) -> u64 {
    d.saturating_sub(1).max(1)
}

/// `r^2 - n l d^2`.
pub fn delta(r: &Integer, d: &Integer, n: &Integer, l: &Integer) -> Integer {
    r * r - n * l * d * d
}

fn check_positive(n: u64, l: u64) -> Result<()> {
    if n == 0 || l == 0 {
        return Err(Error::domain(format!("n and l must be positive (got n={n}, l={l})")));
    }
    Ok(())
}

/// `Some(sqrt(l/n))` when `l <= n` and `n l` is a perfect square.
fn square_case_value(n: u64, l: u64) -> Option<Rational> {
    if l > n {
        return None;
    }
    let nl = BigInt::from(n) * l;
    let root = isqrt(&nl).ok()?;
    (&root * &root == nl).then(|| ratio(root, n))
}

fn square_bound(n: u64, l: u64, value: Rational, refined: bool) -> SeshadriBound {
    SeshadriBound { n, l, value, witness: None, square_case: true, refined }
}

/// Running argmax; candidates must be offered in tie-break order.
struct Best(Option<BoundWitness>);

impl Best {
    fn offer(&mut self, w: BoundWitness) {
        match &self.0 {
            Some(cur) if cur.value >= w.value => {}
            _ => self.0 = Some(w),
        }
    }
}

fn to_u64(x: &Integer) -> u64 {
    x.to_u64().expect("witness component fits in u64")
}

/// The basic bound `max S(n, l)`.
///
/// Only `O(sqrt(n/l))` candidates are examined: for each `d <= sqrt(n/l)` the
/// best lower-family member uses `r = floor(d sqrt(n l))` and the best upper
/// one `r = ceil(d sqrt(n l))`; beyond that range only `r = n` with
/// `d = ceil(sqrt(n/l))` can win. Ties go to the smallest `d`, then the
/// smallest `r`, then the lower family.
pub fn epsilon_basic(n: u64, l: u64) -> Result<SeshadriBound> {
    check_positive(n, l)?;
    if let Some(v) = square_case_value(n, l) {
        return Ok(square_bound(n, l, v, false));
    }
    let nl = BigInt::from(n) * l;
    let d_floor = isqrt(&BigInt::from(n / l))?.to_u64().unwrap_or(0);
    // largest d with d^2 l <= n
    let d_floor = if d_floor * d_floor * l > n { d_floor - 1 } else { d_floor };
    let mut best = Best(None);
    for d in 1..=d_floor {
        let dd = BigInt::from(d);
        let target = &dd * &dd * &nl;
        let lo = isqrt(&target)?;
        let hi = if &lo * &lo == target { lo.clone() } else { &lo + 1u32 };
        best.offer(BoundWitness {
            r: to_u64(&lo),
            d,
            m: 1,
            tag: SetTag::S1,
            value: ratio(lo.clone(), BigInt::from(n) * d),
        });
        best.offer(BoundWitness {
            r: to_u64(&hi),
            d,
            m: 1,
            tag: SetTag::S2,
            value: ratio(dd * l, hi),
        });
    }
    let d_ceil = to_u64(&ceil_sqrt_ratio(n, l)?);
    if d_ceil > d_floor {
        best.offer(BoundWitness { r: n, d: d_ceil, m: 1, tag: SetTag::S1, value: ratio(1, d_ceil) });
    }
    let w = best.0.expect("candidate set is never empty");
    Ok(SeshadriBound { n, l, value: w.value.clone(), witness: Some(w), square_case: false, refined: false })
}

/// `ceil(sqrt(n/l))`: least `d` with `d^2 l >= n`.
fn ceil_sqrt_ratio(n: u64, l: u64) -> Result<Integer> {
    let mut d = ceil_sqrt(&BigInt::from(n.div_ceil(l)))?;
    // ceil(n/l) may overshoot n/l; step down while still admissible
    while d > BigInt::from(1u32) {
        let dm = &d - 1u32;
        if &dm * &dm * l >= BigInt::from(n) {
            d = dm;
        } else {
            break;
        }
    }
    Ok(d)
}

/// Direct enumeration of `S(n, l)` over `1 <= r <= n`, `1 <= d <= ceil(sqrt(n/l))`.
///
/// Kept deliberately naive: it is the reference that [`epsilon_basic`] is
/// tested against. Refuses the square case, whose value is a supremum.
pub fn epsilon_oracle(n: u64, l: u64) -> Result<Rational> {
    check_positive(n, l)?;
    let nl = BigInt::from(n) * l;
    if l <= n && is_perfect_square(&nl) {
        return Err(Error::domain(format!("n={n}, l={l}: n l is a square, bound is only a supremum")));
    }
    let mut d_max = 1u64;
    while d_max * d_max * l < n {
        d_max += 1;
    }
    let mut best = Rational::zero();
    for d in 1..=d_max {
        let bound = BigInt::from(d * d) * &nl;
        for r in 1..=n {
            let rr = BigInt::from(r) * r;
            if rr <= bound {
                let v = ratio(r, n * d);
                if v > best {
                    best = v;
                }
            }
            if rr >= bound {
                let v = ratio(d * l, r);
                if v > best {
                    best = v;
                }
            }
        }
    }
    Ok(best)
}

/// The refined bound `max S'(n, l)`.
///
/// For each `d`, the effective count `R = r + m - 1` ranges over
/// `1..=n + f(d) - 1`. The scan stops at the first `d` with
/// `d sqrt(n l) > n + f(d) - 1`: from there on the upper family is empty and
/// the lower family's best value `(n + f(d) - 1)/(n d)` only decreases.
/// Witnesses use the smallest multiplicity realizing `R`.
pub fn epsilon_refined(n: u64, l: u64) -> Result<SeshadriBound> {
    check_positive(n, l)?;
    if let Some(v) = square_case_value(n, l) {
        return Ok(square_bound(n, l, v, true));
    }
    let nl = BigInt::from(n) * l;
    let mut best = Best(None);
    let mut d = 1u64;
    loop {
        let r_cap = n + max_multiplicity(d) - 1;
        let dd = BigInt::from(d);
        let target = &dd * &dd * &nl;
        let lo = isqrt(&target)?;
        let exact = &lo * &lo == target;
        let lower_r = lo.clone().min(BigInt::from(r_cap));
        if lower_r >= BigInt::from(1u32) {
            let big_r = to_u64(&lower_r);
            let (r, m) = split_effective(big_r, n);
            best.offer(BoundWitness {
                r,
                d,
                m,
                tag: SetTag::S1Prime,
                value: ratio(big_r, n * d),
            });
        }
        let hi = if exact { lo.clone() } else { &lo + 1u32 };
        if hi <= BigInt::from(r_cap) {
            let big_r = to_u64(&hi);
            let (r, m) = split_effective(big_r, n);
            best.offer(BoundWitness { r, d, m, tag: SetTag::S2Prime, value: ratio(dd * l, hi) });
        }
        let cap = BigInt::from(r_cap);
        if target > &cap * &cap {
            break;
        }
        d += 1;
    }
    let w = best.0.expect("candidate set is never empty");
    Ok(SeshadriBound { n, l, value: w.value.clone(), witness: Some(w), square_case: false, refined: true })
}

/// Splits an effective count `R` into `(r, m)` with `r <= n` and `m` minimal.
fn split_effective(big_r: u64, n: u64) -> (u64, u64) {
    if big_r <= n {
        (big_r, 1)
    } else {
        (n, big_r - n + 1)
    }
}

/// Exhaustive enumeration of `S'(n, l)`; test reference for [`epsilon_refined`].
pub fn epsilon_refined_oracle(n: u64, l: u64) -> Result<Rational> {
    check_positive(n, l)?;
    let nl = BigInt::from(n) * l;
    if l <= n && is_perfect_square(&nl) {
        return Err(Error::domain(format!("n={n}, l={l}: n l is a square, bound is only a supremum")));
    }
    let mut best = Rational::zero();
    // d sqrt(nl) <= n + d - 2 forces d <= n when nl >= 2; larger d only
    // contribute lower-family values below 1/n + 1/d.
    for d in 1..=n + 2 {
        let f = max_multiplicity(d);
        let bound = BigInt::from(d * d) * &nl;
        for r in 1..=n {
            for m in 1..=f {
                let big_r = r + m - 1;
                let rr = BigInt::from(big_r) * big_r;
                if rr <= bound {
                    let v = ratio(big_r, n * d);
                    if v > best {
                        best = v;
                    }
                }
                if rr >= bound {
                    let v = ratio(d * l, big_r);
                    if v > best {
                        best = v;
                    }
                }
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat_int;

    fn w(b: &SeshadriBound) -> &BoundWitness {
        b.witness.as_ref().unwrap()
    }

    #[test]
    fn golden_values() {
        let e33 = epsilon_basic(33, 1).unwrap();
        assert_eq!(e33.value, ratio(4, 23));
        assert_eq!((w(&e33).r, w(&e33).d, w(&e33).tag), (23, 4, SetTag::S2));
        assert_eq!(epsilon_basic(7, 1).unwrap().value, ratio(5, 14));
        assert_eq!(epsilon_basic(8, 1).unwrap().value, ratio(1, 3));
        assert_eq!(epsilon_basic(19, 1).unwrap().value, ratio(39, 171));
        assert_eq!(epsilon_basic(10, 1).unwrap().value, ratio(3, 10));
        assert_eq!(epsilon_basic(12, 1).unwrap().value, ratio(2, 7));
        assert_eq!(epsilon_basic(15, 1).unwrap().value, ratio(1, 4));
    }

    #[test]
    fn large_l_gives_one() {
        let b = epsilon_basic(3, 5).unwrap();
        assert_eq!(b.value, rat_int(1));
        assert!(!b.square_case);
        assert!(w(&b).verify(3, 5));
        // l > n with n l square is not the square case
        let b = epsilon_basic(1, 4).unwrap();
        assert_eq!(b.value, rat_int(1));
        assert!(!b.square_case);
    }

    #[test]
    fn square_cases() {
        let b = epsilon_basic(4, 1).unwrap();
        assert!(b.square_case);
        assert_eq!(b.value, ratio(1, 2));
        assert!(b.witness.is_none());
        let b = epsilon_basic(5, 5).unwrap();
        assert!(b.square_case);
        assert_eq!(b.value, rat_int(1));
        let b = epsilon_basic(8, 2).unwrap();
        assert!(b.square_case);
        assert_eq!(b.value, ratio(1, 2));
        assert!(epsilon_refined(16, 1).unwrap().square_case);
    }

    #[test]
    fn rejects_zero() {
        assert!(epsilon_basic(0, 1).is_err());
        assert!(epsilon_basic(3, 0).is_err());
        assert!(epsilon_refined(0, 1).is_err());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(epsilon_oracle(33, 1).unwrap(), ratio(4, 23));
        assert_eq!(epsilon_oracle(7, 1).unwrap(), ratio(5, 14));
        assert_eq!(epsilon_oracle(2, 1).unwrap(), ratio(1, 2));
        assert!(epsilon_oracle(4, 1).is_err());
    }

    #[test]
    fn tie_break_prefers_small_d_then_lower_family() {
        let b = epsilon_basic(6, 1).unwrap();
        assert_eq!(b.value, ratio(2, 5));
        assert_eq!((w(&b).r, w(&b).d, w(&b).tag), (5, 2, SetTag::S2));
        // 1/4 is reached at d = 1, 2, 3 and by 1/d*
        let b = epsilon_basic(15, 1).unwrap();
        assert_eq!((w(&b).r, w(&b).d, w(&b).tag), (4, 1, SetTag::S2));
    }

    #[test]
    fn refined_examples() {
        let b = epsilon_refined(7, 1).unwrap();
        assert_eq!(b.value, ratio(3, 8));
        assert_eq!((w(&b).r, w(&b).d, w(&b).m, w(&b).tag), (7, 3, 2, SetTag::S2Prime));
        let b = epsilon_refined(14, 1).unwrap();
        assert!(b.value >= ratio(4, 15));
        assert_eq!(b.value, epsilon_refined_oracle(14, 1).unwrap());
        assert!(epsilon_refined(33, 1).unwrap().value >= ratio(4, 23));
        assert_eq!(epsilon_refined(3, 5).unwrap().value, rat_int(1));
    }

    #[test]
    fn witnesses_verify() {
        for n in 1..80 {
            for l in 1..12 {
                for b in [epsilon_basic(n, l).unwrap(), epsilon_refined(n, l).unwrap()] {
                    if let Some(wit) = &b.witness {
                        assert!(wit.verify(n, l), "n={n} l={l} {wit}");
                        assert_eq!(wit.value, b.value);
                    }
                }
            }
        }
    }

    #[test]
    fn delta_examples() {
        let i = |v: i64| BigInt::from(v);
        assert_eq!(delta(&i(23), &i(4), &i(33), &i(1)), i(1));
        assert_eq!(delta(&i(170), &i(39), &i(19), &i(1)), i(1));
        assert_eq!(delta(&i(3), &i(1), &i(10), &i(1)), i(-1));
    }

    #[test]
    fn multiplicity_cap() {
        assert_eq!(max_multiplicity(1), 1);
        assert_eq!(max_multiplicity(2), 1);
        assert_eq!(max_multiplicity(3), 2);
        assert_eq!(max_multiplicity(10), 9);
    }
}
