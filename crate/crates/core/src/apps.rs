//! Degree thresholds for the plane systems `F_t = t L' - m (E_1 + ... + E_n)`
//! at `n` general points.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::bounds::{epsilon_basic, SeshadriBound};
use crate::error::{Error, Result};
use crate::exactmath::{ceil, rat_int, Rational};
use crate::bounds::floor_sqrt_u64;

fn plane_epsilon(n: u64, m: u64) -> Result<SeshadriBound> {
    if n == 0 || m == 0 {
        return Err(Error::domain("n and m must be positive"));
    }
    epsilon_basic(n, 1)
}

/// `m n epsilon_n`: `F_t` is not effective for any `t` below it.
pub fn effectivity_lower_bound(n: u64, m: u64) -> Result<Rational> {
    let e = plane_epsilon(n, m)?;
    Ok(rat_int(m * n) * e.value)
}

/// `m / epsilon_n`: `t L' - m (E_1 + ... + E_n)` is ample for every rational
/// `t` above it (the unit-coefficient statement scaled by `m`).
pub fn ampleness_lower_bound(n: u64, m: u64) -> Result<Rational> {
    let e = plane_epsilon(n, m)?;
    Ok(rat_int(m) / e.value)
}

fn sqrt_parts(n: u64) -> (u64, bool) {
    let root = floor_sqrt_u64(n);
    (root, root * root == n)
}

fn require_large(n: u64) -> Result<()> {
    if n <= 9 {
        return Err(Error::precondition(format!(
            "n = {n} <= 9: regularity of uniform systems on at most 9 points is completely known and not bounded here"
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityBounds {
    /// `m d* + ceil((d* - 3)/2)` with `d* = ceil(sqrt n)`.
    pub a: u64,
    /// `ceil((m + 1)/epsilon_n) - 3`, for non-square `n`.
    pub b: Option<u64>,
    /// `n` square and `4 m > d* - 2`: no smaller `t` is regular.
    pub a_sharp: bool,
}

impl RegularityBounds {
    pub fn best(&self) -> u64 {
        self.b.map_or(self.a, |b| b.min(self.a))
    }
}

/// Least degrees from which `F_t` is known to be regular. Requires `n > 9`.
pub fn regularity_bounds(n: u64, m: u64) -> Result<RegularityBounds> {
    require_large(n)?;
    let e = plane_epsilon(n, m)?;
    let (root, square) = sqrt_parts(n);
    let d_star = if square { root } else { root + 1 };
    // d* >= 4, so (d* - 3)/2 > 0
    let a = m * d_star + (d_star - 3).div_ceil(2);
    let b = if square {
        None
    } else {
        let c = ceil(&(rat_int(m + 1) / &e.value));
        Some(u64::try_from(c - BigInt::from(3)).expect("positive threshold"))
    };
    Ok(RegularityBounds { a, b, a_sharp: square && 4 * m > d_star - 2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessBounds {
    /// Regularity threshold `N` used for the generic offsets.
    pub regular_from: u64,
    pub free: u64,
    pub very_ample: u64,
    /// Whether the even-square bounds `m sqrt n + (sqrt n - 2)/2` and
    /// `m sqrt n + sqrt n / 2` were used.
    pub even_square: bool,
}

/// Base point freeness from `N + 1` and very ampleness from `N + 2`, or the
/// even-square bounds when `n > 9` is an even square and `4 m > sqrt n - 2`.
pub fn freeness_va_bounds(n: u64, m: u64) -> Result<FreenessBounds> {
    let reg = regularity_bounds(n, m)?;
    let regular_from = reg.best();
    let (root, square) = sqrt_parts(n);
    if square && root % 2 == 0 && 4 * m > root - 2 {
        let free = m * root + (root - 2) / 2;
        return Ok(FreenessBounds { regular_from, free, very_ample: m * root + root / 2, even_square: true });
    }
    Ok(FreenessBounds { regular_from, free: regular_from + 1, very_ample: regular_from + 2, even_square: false })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub n: u64,
    pub m: u64,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub epsilon: Rational,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub effectivity_lb: Rational,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub ampleness_lb: Rational,
    pub regularity_a: Option<u64>,
    pub regularity_b: Option<u64>,
    pub regularity_sharp: bool,
    pub freeness_lb: Option<u64>,
    pub very_ample_lb: Option<u64>,
    pub notes: Vec<String>,
}

pub fn threshold_report(n: u64, m: u64) -> Result<ThresholdReport> {
    let e = plane_epsilon(n, m)?;
    let mut notes = Vec::new();
    if e.square_case {
        notes.push(format!(
            "n = {n} is a square: epsilon_n = {} is a supremum of certified values, so only t < {} is excluded",
            e.value,
            rat_int(m * n) * &e.value
        ));
    }
    let mut report = ThresholdReport {
        n,
        m,
        effectivity_lb: effectivity_lower_bound(n, m)?,
        ampleness_lb: ampleness_lower_bound(n, m)?,
        epsilon: e.value,
        regularity_a: None,
        regularity_b: None,
        regularity_sharp: false,
        freeness_lb: None,
        very_ample_lb: None,
        notes,
    };
    match regularity_bounds(n, m) {
        Ok(reg) => {
            let free = freeness_va_bounds(n, m)?;
            report.regularity_a = Some(reg.a);
            report.regularity_b = reg.b;
            report.regularity_sharp = reg.a_sharp;
            report.freeness_lb = Some(free.free);
            report.very_ample_lb = Some(free.very_ample);
            if free.even_square {
                report.notes.push("freeness and very ampleness use the even-square generation bounds".into());
            }
        }
        Err(Error::Precondition(msg)) => report.notes.push(msg),
        Err(e) => return Err(e),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::ratio;

    #[test]
    fn effectivity_examples() {
        assert_eq!(effectivity_lower_bound(7, 1).unwrap(), ratio(5, 2));
        assert_eq!(effectivity_lower_bound(33, 2).unwrap(), ratio(264, 23));
        assert_eq!(effectivity_lower_bound(4, 3).unwrap(), rat_int(6));
        assert!(!threshold_report(4, 3).unwrap().notes.is_empty());
    }

    #[test]
    fn ampleness_examples() {
        assert_eq!(ampleness_lower_bound(7, 1).unwrap(), ratio(14, 5));
        assert_eq!(ampleness_lower_bound(8, 2).unwrap(), rat_int(6));
        assert_eq!(ampleness_lower_bound(19, 1).unwrap(), ratio(57, 13));
    }

    #[test]
    fn regularity_examples() {
        let r = regularity_bounds(16, 3).unwrap();
        assert_eq!((r.a, r.b, r.a_sharp), (13, None, true));
        let r = regularity_bounds(10, 1).unwrap();
        assert_eq!((r.a, r.b), (5, Some(4)));
        let r = regularity_bounds(33, 5).unwrap();
        assert_eq!((r.a, r.b), (32, Some(32)));
        assert!(matches!(regularity_bounds(9, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn freeness_examples() {
        let f = freeness_va_bounds(16, 3).unwrap();
        assert_eq!((f.free, f.very_ample, f.even_square), (13, 14, true));
        let f = freeness_va_bounds(10, 1).unwrap();
        assert_eq!((f.free, f.very_ample), (5, 6));
        let f = freeness_va_bounds(36, 1).unwrap();
        assert_eq!((f.regular_from, f.free, f.very_ample, f.even_square), (8, 9, 10, false));
        assert!(freeness_va_bounds(5, 1).is_err());
    }

    #[test]
    fn report_small_n_has_note() {
        let r = threshold_report(7, 1).unwrap();
        assert_eq!(r.regularity_a, None);
        assert!(r.notes.iter().any(|n| n.contains("<= 9")));
    }
}
