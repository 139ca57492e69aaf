use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{isqrt, Integer};

/// A solution of `r^2 - N d^2 = rhs` with `rhs = ±1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSolution {
    #[serde(with = "bigint_str")]
    pub r: Integer,
    #[serde(with = "bigint_str")]
    pub d: Integer,
    pub rhs: i8,
}

impl PellSolution {
    pub fn satisfies(&self, radicand: &Integer) -> bool {
        &self.r * &self.r - radicand * &self.d * &self.d == BigInt::from(self.rhs)
    }
}

impl fmt::Display for PellSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={} d={} rhs={:+}", self.r, self.d, self.rhs)
    }
}

mod bigint_str {
    use super::Integer;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Integer, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Integer, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// Least positive solution of `r^2 - N d^2 = ±1`, read off the convergents of
/// the continued fraction of `sqrt(N)`.
///
/// The first convergent `h/k` with `h^2 - N k^2 = ±1` is the fundamental
/// solution; `rhs` is `-1` exactly when the period of the expansion is odd.
pub fn pell_fundamental(radicand: &Integer) -> Result<PellSolution> {
    if radicand < &BigInt::from(2u32) {
        return Err(Error::domain(format!("Pell radicand must be at least 2, got {radicand}")));
    }
    let a0 = isqrt(radicand)?;
    if &a0 * &a0 == *radicand {
        return Err(Error::domain(format!("Pell radicand {radicand} is a perfect square")));
    }
    // sqrt(N) = [a0; a1, a2, ...] via (m, q, a) with a = floor((a0 + m)/q)
    let (mut m, mut q, mut a) = (Integer::zero(), Integer::one(), a0.clone());
    let (mut h_prev, mut h) = (Integer::one(), a0.clone());
    let (mut k_prev, mut k) = (Integer::zero(), Integer::one());
    loop {
        let value = &h * &h - radicand * &k * &k;
        if value.abs().is_one() {
            let rhs = if value.is_positive() { 1 } else { -1 };
            return Ok(PellSolution { r: h, d: k, rhs });
        }
        m = &q * &a - &m;
        q = (radicand - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// Least positive solution of `r^2 - N d^2 = +1`. When the fundamental
/// solution has `rhs = -1`, this is its square in `Z[sqrt N]`.
pub fn pell_plus_one(radicand: &Integer) -> Result<PellSolution> {
    let base = pell_fundamental(radicand)?;
    if base.rhs == 1 {
        return Ok(base);
    }
    let r = &base.r * &base.r + radicand * &base.d * &base.d;
    let d = BigInt::from(2u32) * &base.r * &base.d;
    Ok(PellSolution { r, d, rhs: 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sol(n: i64) -> PellSolution {
        pell_fundamental(&BigInt::from(n)).unwrap()
    }

    /// Brute force: least d >= 1 with N d^2 ± 1 a perfect square.
    fn brute(n: i64) -> (i64, i64, i8) {
        for d in 1i64.. {
            let base = n * d * d;
            for (rhs, target) in [(-1i8, base - 1), (1i8, base + 1)] {
                let r = (target as f64).sqrt().round() as i64;
                for cand in [r - 1, r, r + 1] {
                    if cand > 0 && cand * cand == target {
                        return (cand, d, rhs);
                    }
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn examples() {
        let s = sol(2);
        assert_eq!((s.r.clone(), s.d.clone(), s.rhs), (BigInt::from(1), BigInt::from(1), -1));
        let p = pell_plus_one(&BigInt::from(2)).unwrap();
        assert_eq!((p.r, p.d, p.rhs), (BigInt::from(3), BigInt::from(2), 1));
        let s = sol(19);
        assert_eq!((s.r, s.d, s.rhs), (BigInt::from(170), BigInt::from(39), 1));
        let s = sol(10);
        assert_eq!((s.r, s.d, s.rhs), (BigInt::from(3), BigInt::from(1), -1));
        let s = sol(33);
        assert_eq!((s.r, s.d, s.rhs), (BigInt::from(23), BigInt::from(4), 1));
    }

    #[test]
    fn rejects_squares() {
        assert!(pell_fundamental(&BigInt::from(16)).is_err());
        assert!(pell_fundamental(&BigInt::from(1)).is_err());
        assert!(pell_fundamental(&BigInt::from(0)).is_err());
    }

    #[test]
    fn matches_brute_force_and_is_minimal() {
        for n in 2i64..=200 {
            let root = (n as f64).sqrt() as i64;
            if root * root == n {
                continue;
            }
            let s = sol(n);
            assert!(s.satisfies(&BigInt::from(n)));
            // brute force is only feasible for moderate fundamental solutions
            if s.d <= BigInt::from(100_000) {
                let (r, d, rhs) = brute(n);
                assert_eq!((s.r.clone(), s.d.clone(), s.rhs), (BigInt::from(r), BigInt::from(d), rhs), "N={n}");
            }
            let p = pell_plus_one(&BigInt::from(n)).unwrap();
            assert!(p.satisfies(&BigInt::from(n)));
            assert_eq!(p.rhs, 1);
        }
    }

    #[test]
    fn large_radicand() {
        // 61 has a famously large fundamental solution
        let s = pell_plus_one(&BigInt::from(61)).unwrap();
        assert_eq!(s.r, "1766319049".parse::<BigInt>().unwrap());
        assert_eq!(s.d, "226153980".parse::<BigInt>().unwrap());
    }
}
