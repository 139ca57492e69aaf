//! Counting experiments around the inequality
//! `epsilon_{n,l} > sqrt(l/n) sqrt(1 - 1/n)` and its variants.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bounds::epsilon_basic;
use crate::error::{Error, Result};
use crate::exactmath::{integer_in_open_sqrt_interval, is_perfect_square, isqrt, Integer, Rational};

fn big(v: u64) -> Integer {
    BigInt::from(v)
}

/// `p^2 a n^2 > q^2 l (a n - 1)` for `epsilon = p/q`, i.e.
/// `epsilon > sqrt(l/n) sqrt(1 - 1/(a n))`.
fn beats(eps: &Rational, n: u64, l: u64, a: u64) -> bool {
    let (p, q) = (eps.numer(), eps.denom());
    p * p * big(a) * big(n) * big(n) > q * q * big(l) * (big(a) * big(n) - 1u32)
}

/// Whether `epsilon_{n,l} > sqrt(l/n) sqrt(1 - 1/n)`.
pub fn star_holds(n: u64, l: u64) -> Result<bool> {
    if n < 2 || l == 0 {
        return Err(Error::domain("need n >= 2 and l >= 1"));
    }
    Ok(beats(&epsilon_basic(n, l)?.value, n, l, 1))
}

/// Whether `(sqrt(n l) sqrt(1 - 1/n), sqrt(n l)/sqrt(1 - 1/n))` contains an
/// integer: `k^2 > l (n - 1)` and `k^2 (n - 1) < n^2 l`.
pub fn interval_i_contains(n: u64, l: u64) -> Result<bool> {
    if n < 2 || l == 0 {
        return Err(Error::domain("need n >= 2 and l >= 1"));
    }
    let hit = integer_in_open_sqrt_interval(&(big(l) * (n - 1)), &big(1), &(big(n) * n * l), &big(n - 1))?;
    Ok(hit.is_some())
}

/// Whether `((n+2) sqrt(n l)/(n+1) - 1, n sqrt(n l)/(n+1))` contains an integer.
pub fn interval_j_contains(n: u64, l: u64) -> Result<bool> {
    if n < 2 || l == 0 {
        return Err(Error::domain("need n >= 2 and l >= 1"));
    }
    let n1 = big(n + 1);
    let lower = big(n + 2) * big(n + 2) * big(n) * big(l);
    // least j >= 1 with (j (n+1))^2 > (n+2)^2 n l; candidate k = j - 1
    let mut j = isqrt(&(&lower / (&n1 * &n1)))?;
    while &j * &j * &n1 * &n1 <= lower {
        j += 1u32;
    }
    let k = j - 1u32;
    Ok(&k * &k * &n1 * &n1 < big(n) * big(n) * big(n) * big(l))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub l: u64,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub epsilon: Rational,
    pub star: bool,
    pub in_i: bool,
    pub in_j: bool,
}

/// Share of `l` for which the inequality holds at a fixed `n`.
///
/// The denominator covers `l = 1, ..., n`; the count covers `l < n` only, and
/// `l = n` (where the inequality always holds) is reported separately in
/// `holds_at_n`. This is the convention that reproduces the published
/// percentages; [`ScanReport::inclusive_percentage`] counts `l = n` as well.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub n: u64,
    pub total_l: u64,
    pub holds_count: u64,
    pub holds_at_n: bool,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub percentage: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<ScanRow>>,
}

impl ScanReport {
    pub fn inclusive_percentage(&self) -> Rational {
        let hits = self.holds_count + u64::from(self.holds_at_n);
        Rational::new(big(100 * hits), big(self.total_l))
    }
}

pub fn star_fraction(n: u64, detail: bool) -> Result<ScanReport> {
    if n < 2 {
        return Err(Error::domain("need n >= 2"));
    }
    let mut holds_count = 0;
    let mut holds_at_n = false;
    let mut rows = detail.then(Vec::new);
    for l in 1..=n {
        let eps = epsilon_basic(n, l)?.value;
        let star = beats(&eps, n, l, 1);
        if l < n {
            holds_count += u64::from(star);
        } else {
            holds_at_n = star;
        }
        if let Some(rows) = rows.as_mut() {
            rows.push(ScanRow { l, star, in_i: interval_i_contains(n, l)?, in_j: interval_j_contains(n, l)?, epsilon: eps });
        }
    }
    Ok(ScanReport {
        n,
        total_l: n,
        holds_count,
        holds_at_n,
        percentage: Rational::new(big(100 * holds_count), big(n)),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfRange {
    pub count: u64,
    pub range_size: u64,
    pub pass: bool,
}

/// Counts the inequality over `ceil((n-1)/2) <= l <= n - 1`; passes when it
/// holds for at least half of them.
pub fn half_range_check(n: u64) -> Result<HalfRange> {
    if n <= 2 {
        return Err(Error::domain("need n > 2"));
    }
    let lo = (n - 1).div_ceil(2);
    let mut count = 0;
    for l in lo..n {
        count += u64::from(star_holds(n, l)?);
    }
    let range_size = n - lo;
    Ok(HalfRange { count, range_size, pass: 2 * count >= range_size })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalCoverage {
    /// Number of `l` in the half range whose interval holds an integer.
    pub hits: u64,
    /// `(n - 1) - ceil(sqrt(n (n - 1)/2)) - 1`.
    pub required: i64,
}

impl IntervalCoverage {
    pub fn pass(&self) -> bool {
        self.hits as i64 >= self.required
    }
}

pub fn interval_coverage(n: u64) -> Result<IntervalCoverage> {
    if n <= 2 {
        return Err(Error::domain("need n > 2"));
    }
    let lo = (n - 1).div_ceil(2);
    let mut hits = 0;
    for l in lo..n {
        hits += u64::from(interval_i_contains(n, l)?);
    }
    // ceil(sqrt(n (n-1) / 2))
    let x = Rational::new(big(n) * big(n - 1), big(2));
    let fl = crate::exactmath::ceil(&x);
    let mut root = isqrt(&fl)?;
    if &root * &root < fl {
        root += 1u32;
    }
    let root = i64::try_from(root).expect("small");
    Ok(IntervalCoverage { hits, required: (n as i64 - 1) - root - 1 })
}

/// Least `(d, r)` in lexicographic order with `1 <= r <= n`, `d >= 1` and
/// `|r/sqrt(n l) - d| <= 1/(n + 1)`, searched over `d <= sqrt(n/l) + 1`.
pub fn dirichlet_witness(n: u64, l: u64) -> Result<Option<(u64, u64)>> {
    if n == 0 || l == 0 {
        return Err(Error::domain("n and l must be positive"));
    }
    let nl = big(n) * big(l);
    if is_perfect_square(&nl) {
        return Err(Error::domain(format!(
            "n l = {nl} is a square; the witness (r, d) = ({}, 1) is trivial and not reported",
            isqrt(&nl)?
        )));
    }
    let d_max = u64::try_from(isqrt(&big(n / l))?).expect("small") + 1;
    for d in 1..=d_max {
        for r in 1..=n {
            if dirichlet_ok(n, l, r, d) {
                return Ok(Some((r, d)));
            }
        }
    }
    Ok(None)
}

/// `|(n+1) r - (n+1) d sqrt(N)| <= sqrt(N)` with `N = n l`, squared out.
pub fn dirichlet_ok(n: u64, l: u64, r: u64, d: u64) -> bool {
    let nl = big(n) * big(l);
    let x = big(n + 1) * big(r);
    let y = big(n + 1) * big(d);
    let x2 = &x * &x;
    let hi = (&y + 1u32) * (&y + 1u32) * &nl;
    let lo = if y.is_zero() { Integer::zero() } else { (&y - 1u32) * (&y - 1u32) * &nl };
    x2 <= hi && x2 >= lo
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleStarReport {
    pub failures: u64,
    pub range_size: u64,
    pub bound: u64,
    pub pass: bool,
}

/// Counts `n` in `[s^2 l, (s+1)^2 l)` where
/// `epsilon_{n,l} > sqrt(l/n) sqrt(1 - 1/(a n))` fails, against the bound
/// `(2a^2 - a + 8) l + 3` (`a > 2`), `14 l + 3` (`a = 2`), `4 l + 2` (`a = 1`).
pub fn doublestar_failure_count(l: u64, s: u64, a: u64) -> Result<DoubleStarReport> {
    if s <= 2 || a == 0 || l == 0 {
        return Err(Error::domain("need s > 2, a >= 1, l >= 1"));
    }
    let bound = match a {
        1 => 4 * l + 2,
        2 => 14 * l + 3,
        _ => (2 * a * a - a + 8) * l + 3,
    };
    let mut failures = 0;
    for n in s * s * l..(s + 1) * (s + 1) * l {
        let eps = epsilon_basic(n, l)?.value;
        if !beats(&eps, n, l, a) {
            failures += 1;
        }
    }
    Ok(DoubleStarReport { failures, range_size: l * (2 * s + 1), bound, pass: failures <= bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::ratio;

    #[test]
    fn star_examples() {
        assert!(star_holds(33, 1).unwrap());
        assert!(!star_holds(10, 1).unwrap());
        for n in 2..30 {
            assert!(star_holds(n, n).unwrap());
        }
        assert!(star_holds(1, 1).is_err());
    }

    #[test]
    fn interval_examples() {
        assert!(!interval_i_contains(19, 18).unwrap());
        assert!(interval_i_contains(19, 13).unwrap());
    }

    #[test]
    fn fraction_small() {
        let r = star_fraction(19, true).unwrap();
        assert_eq!((r.holds_count, r.total_l), (12, 19));
        assert!(r.holds_at_n);
        assert_eq!(r.percentage, ratio(1200, 19));
        assert_eq!(r.inclusive_percentage(), ratio(1300, 19));
        assert_eq!(r.rows.unwrap().len(), 19);
    }

    #[test]
    fn half_range_small() {
        for n in 3..45 {
            assert!(half_range_check(n).unwrap().pass, "n={n}");
        }
    }

    #[test]
    fn dirichlet_examples() {
        assert_eq!(dirichlet_witness(2, 1).unwrap(), Some((1, 1)));
        assert!(dirichlet_witness(5, 5).is_err());
        let (r, d) = dirichlet_witness(19, 1).unwrap().unwrap();
        assert!(dirichlet_ok(19, 1, r, d));
        assert!(r <= 19);
    }

    #[test]
    fn doublestar_examples() {
        let r = doublestar_failure_count(1, 5, 1).unwrap();
        assert_eq!(r.bound, 6);
        assert!(r.pass);
        assert_eq!(doublestar_failure_count(1, 10, 2).unwrap().bound, 17);
        assert_eq!(doublestar_failure_count(2, 4, 3).unwrap().bound, 49);
    }
}
