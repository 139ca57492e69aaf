use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::pell::{pell_plus_one, PellSolution};
use super::special::n_pm1_square;
use super::{epsilon_basic, epsilon_refined};
use crate::error::{Error, Result};
use crate::exactmath::{Integer, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Comparison {
    Below,
    Equal,
    Above,
}

impl From<Ordering> for Comparison {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Comparison::Below,
            Ordering::Equal => Comparison::Equal,
            Ordering::Greater => Comparison::Above,
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Below => "below",
            Comparison::Equal => "equal",
            Comparison::Above => "above",
        })
    }
}

/// Plane (`l = 1`) comparison of the computed bounds against `1/sqrt(n+1)`
/// and against the value `d/r` from the `+1` Pell solution for `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub n: u64,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub epsilon: Rational,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub refined: Rational,
    /// `epsilon` against `1/sqrt(n+1)`.
    pub versus_inverse_sqrt: Comparison,
    /// `refined` against `epsilon`.
    pub refined_versus_basic: Comparison,
    pub n_pm1_square: bool,
    pub pell: Option<PellSolution>,
    #[serde(with = "crate::exactmath::serde_rational_opt")]
    pub pell_value: Option<Rational>,
    /// Whether the Pell `r` is at most `n`, so the value is realized among
    /// the points.
    pub pell_within_n: bool,
}

pub fn compare_references(n: u64) -> Result<ReferenceRow> {
    if n < 2 {
        return Err(Error::domain("n must be at least 2"));
    }
    let epsilon = epsilon_basic(n, 1)?.value;
    let refined = epsilon_refined(n, 1)?.value;
    // eps^2 (n+1) vs 1
    let lhs: Integer = epsilon.numer() * epsilon.numer() * BigInt::from(n + 1);
    let rhs: Integer = epsilon.denom() * epsilon.denom();
    let versus_inverse_sqrt = lhs.cmp(&rhs).into();
    let refined_versus_basic = refined.cmp(&epsilon).into();
    let pell = pell_plus_one(&BigInt::from(n)).ok();
    let pell_value = pell.as_ref().map(|p| Rational::new(p.d.clone(), p.r.clone()));
    let pell_within_n = pell.as_ref().is_some_and(|p| p.r <= BigInt::from(n));
    debug_assert!(pell.as_ref().map_or(true, |p| p.rhs == 1 && p.r.clone() * &p.r - BigInt::from(n) * &p.d * &p.d == BigInt::one()));
    Ok(ReferenceRow {
        n,
        epsilon,
        refined,
        versus_inverse_sqrt,
        refined_versus_basic,
        n_pm1_square: n_pm1_square(n),
        pell,
        pell_value,
        pell_within_n,
    })
}
