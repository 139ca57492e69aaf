//! Optimal nef test divisors for fat-point systems `t L' - sum b_i E_i`, and
//! emptiness certificates derived from them.
//!
//! With `a_0 = 1` and a curve of degree `d` through `r` simple points, the
//! admissible coefficients form the polytope `1 >= a_1 >= ... >= a_n >= 0`,
//! `a_1 + ... + a_r <= d^2 l`, `a_1 + ... + a_n <= r`. The test divisor
//! `d L' - sum a_i E_i` meets the target negatively exactly when
//! `t < sum a_i b_i / (d l)`.
//!
//! Only `d <= ceil(sqrt(n/l))` matters: once `d^2 l >= n >= r` the prefix
//! constraint is implied by `a_i <= 1`, so the polytope stops depending on
//! `d` while the threshold `sum a_i b_i / (d l)` decreases.

mod simplex;
mod vertex;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bounds::epsilon_basic;
use crate::error::{Error, Result};
use crate::exactmath::{ceil_sqrt, rat_int, Rational};
use crate::nefcert::{check_nef_criterion, BlowupDivisorClass, CurveData, NefCertificate};

pub use simplex::maximize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    /// Exact simplex over the coefficient polytope.
    #[default]
    Simplex,
    /// Enumeration of block-structured vertices.
    Blocks,
}

impl FromStr for Solver {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simplex" => Ok(Solver::Simplex),
            "blocks" => Ok(Solver::Blocks),
            other => Err(Error::Parse(format!("unknown solver {other:?} (expected simplex or blocks)"))),
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Solver::Simplex => "simplex",
            Solver::Blocks => "blocks",
        })
    }
}

/// `t L' - sum b_i E_i` with `b` nonincreasing, padded with zeros to length `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetSystem {
    #[serde(with = "crate::exactmath::serde_rational")]
    pub t: Rational,
    pub b: Vec<u64>,
    pub n: u64,
    pub l: u64,
}

impl TargetSystem {
    pub fn new(t: Rational, mut b: Vec<u64>, n: Option<u64>, l: u64) -> Result<Self> {
        validate_mults(&b)?;
        let n = n.unwrap_or(b.len() as u64);
        if n == 0 || l == 0 {
            return Err(Error::domain("n and l must be positive"));
        }
        if (b.len() as u64) > n {
            return Err(Error::domain(format!("{} multiplicities given for n = {n} points", b.len())));
        }
        b.resize(n as usize, 0);
        Ok(TargetSystem { t, b, n, l })
    }

    pub fn class(&self) -> BlowupDivisorClass {
        BlowupDivisorClass::new(self.l, self.t.clone(), self.b.iter().map(|&x| rat_int(x)).collect())
    }
}

fn validate_mults(b: &[u64]) -> Result<()> {
    if b.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::domain("multiplicities must be nonincreasing"));
    }
    Ok(())
}

/// The best test divisor found and the degree threshold it gives.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimalTest {
    pub r: u64,
    pub d: u64,
    /// `max sum a_i b_i / (d l)`; emptiness is certified for every `t` below it.
    #[serde(with = "crate::exactmath::serde_rational")]
    pub threshold: Rational,
    /// Whether the optimum itself satisfies the strict self-intersection
    /// check; otherwise the threshold is a supremum.
    pub attained: bool,
    /// The optimum with `a_0 = 1`, before any strictness repair.
    #[serde(with = "crate::exactmath::serde_rational_vec")]
    pub coefficients: Vec<Rational>,
    /// A valid certificate: the optimum, or its scaling by `1 - 10^-6` when
    /// the optimum is not attained.
    pub certificate: NefCertificate,
}

fn solve_one(b: &[Rational], r: usize, cap: u64, solver: Solver) -> Result<(Rational, Vec<Rational>)> {
    match solver {
        Solver::Blocks => Ok(vertex::solve(b, r, cap)),
        Solver::Simplex => {
            let n = b.len();
            let mut rows = Vec::with_capacity(n + 2);
            let mut rhs = Vec::with_capacity(n + 2);
            let mut first = vec![Rational::zero(); n];
            first[0] = Rational::one();
            rows.push(first);
            rhs.push(Rational::one());
            for i in 0..n - 1 {
                let mut row = vec![Rational::zero(); n];
                row[i] = -Rational::one();
                row[i + 1] = Rational::one();
                rows.push(row);
                rhs.push(Rational::zero());
            }
            let mut prefix = vec![Rational::zero(); n];
            prefix.iter_mut().take(r).for_each(|x| *x = Rational::one());
            rows.push(prefix);
            rhs.push(rat_int(cap));
            rows.push(vec![Rational::one(); n]);
            rhs.push(rat_int(r as u64));
            simplex::maximize(b, &rows, &rhs)
        }
    }
}

fn scaled_certificate(a: &[Rational], d: u64, r: u64, l: u64, factor: &Rational) -> Result<NefCertificate> {
    let scaled: Vec<Rational> = a.iter().map(|x| x * factor).collect();
    check_nef_criterion(&Rational::one(), &scaled, &CurveData::simple(d, r), l)
}

/// Searches `1 <= r <= r_max` (default `n`) and `1 <= d <= d_max` (default
/// `ceil(sqrt(n/l)) + 1`). Ties prefer attained optima, then smaller `d`, then
/// smaller `r`.
pub fn optimal_test_divisor(
    b: &[u64],
    n: u64,
    l: u64,
    r_max: Option<u64>,
    d_max: Option<u64>,
    solver: Solver,
) -> Result<OptimalTest> {
    validate_mults(b)?;
    if n == 0 || l == 0 || b.len() as u64 > n {
        return Err(Error::domain("need n, l >= 1 and at most n multiplicities"));
    }
    let mut bq: Vec<Rational> = b.iter().map(|&x| rat_int(x)).collect();
    bq.resize(n as usize, Rational::zero());
    let r_max = r_max.unwrap_or(n).min(n);
    let d_max = match d_max {
        Some(d) => d,
        None => {
            // ceil(sqrt(n/l)): least d with d^2 l >= n
            let mut c = u64::try_from(ceil_sqrt(&BigInt::from(n / l))?).expect("small").max(1);
            while c > 1 && (c - 1) * (c - 1) * l >= n {
                c -= 1;
            }
            while c * c * l < n {
                c += 1;
            }
            c + 1
        }
    };
    if r_max == 0 || d_max == 0 {
        return Err(Error::domain("search bounds must be positive"));
    }
    let mut best: Option<(Rational, bool, u64, u64, Vec<Rational>)> = None;
    for d in 1..=d_max {
        let cap = rat_int(d * d * l);
        for r in 1..=r_max {
            let (value, a) = solve_one(&bq, r as usize, d * d * l, solver)?;
            let threshold = value / rat_int(d * l);
            let squares: Rational = a.iter().map(|x| x * x).sum();
            let attained = squares < cap;
            let better = match &best {
                None => true,
                Some((t, att, ..)) => threshold > *t || (threshold == *t && attained && !att),
            };
            if better {
                best = Some((threshold, attained, r, d, a));
            }
        }
    }
    let (threshold, attained, r, d, a) = best.expect("nonempty search");
    let factor = if attained { Rational::one() } else { Rational::one() - Rational::new(1.into(), 1_000_000.into()) };
    let mut certificate = scaled_certificate(&a, d, r, l, &factor)?;
    certificate.provenance = format!("lp-{solver}");
    Ok(OptimalTest { r, d, threshold, attained, coefficients: a, certificate })
}

/// `epsilon_{n,l} (b_1 + ... + b_n) / l`: the threshold from the best uniform
/// test divisor.
pub fn uniform_threshold(b: &[u64], n: u64, l: u64) -> Result<Rational> {
    let eps = epsilon_basic(n, l)?.value;
    let total: u64 = b.iter().sum();
    Ok(eps * rat_int(total) / rat_int(l))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EffectivityVerdict {
    pub empty_certified: bool,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub threshold: Rational,
    pub attained: bool,
    pub r: u64,
    pub d: u64,
    /// The test divisor used; when emptiness is certified it meets the target negatively.
    pub best_test_divisor: NefCertificate,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub pairing: Rational,
}

/// Certifies `|t L' - sum b_i E_i| = {}` when `t` is below the optimal threshold.
pub fn certify_empty(target: &TargetSystem, solver: Solver) -> Result<EffectivityVerdict> {
    let opt = optimal_test_divisor(&target.b, target.n, target.l, None, None, solver)?;
    let h = target.class();
    let empty_certified = target.t < opt.threshold;
    let mut cert = opt.certificate.clone();
    if empty_certified && !opt.attained {
        // shrink by 1 - 1/K until the pairing is negative
        let mut k = BigInt::from(10);
        loop {
            let factor = Rational::one() - Rational::new(BigInt::one(), k.clone());
            cert = scaled_certificate(&opt.coefficients, opt.d, opt.r, target.l, &factor)?;
            if cert.divisor.pairing(&h)? < Rational::zero() {
                break;
            }
            k *= 10;
        }
        cert.provenance = opt.certificate.provenance.clone();
    }
    let pairing = cert.divisor.pairing(&h)?;
    Ok(EffectivityVerdict {
        empty_certified,
        threshold: opt.threshold,
        attained: opt.attained,
        r: opt.r,
        d: opt.d,
        best_test_divisor: cert,
        pairing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::ratio;

    fn example_b() -> Vec<u64> {
        let mut b = vec![2; 7];
        b.extend(vec![1; 8]);
        b
    }

    #[test]
    fn two_multiplicity_example() {
        for solver in [Solver::Simplex, Solver::Blocks] {
            let o = optimal_test_divisor(&example_b(), 15, 1, None, None, solver).unwrap();
            assert_eq!(o.threshold, rat_int(6));
            assert_eq!(o.d, 3);
            assert!(o.certificate.valid);
        }
        assert_eq!(uniform_threshold(&example_b(), 15, 1).unwrap(), ratio(11, 2));
    }

    #[test]
    fn uniform_simple_points() {
        let o = optimal_test_divisor(&[1; 7], 7, 1, None, None, Solver::Simplex).unwrap();
        assert_eq!(o.threshold, ratio(5, 2));
        assert_eq!(uniform_threshold(&[1; 7], 7, 1).unwrap(), ratio(5, 2));
    }

    #[test]
    fn emptiness_examples() {
        let t = TargetSystem::new(rat_int(5), example_b(), None, 1).unwrap();
        let v = certify_empty(&t, Solver::Simplex).unwrap();
        assert!(v.empty_certified);
        assert!(v.pairing < Rational::zero());
        assert!(v.best_test_divisor.valid);

        let t = TargetSystem::new(rat_int(6), example_b(), None, 1).unwrap();
        assert!(!certify_empty(&t, Solver::Simplex).unwrap().empty_certified);

        let t = TargetSystem::new(rat_int(3), vec![1; 7], None, 1).unwrap();
        assert!(!certify_empty(&t, Solver::Blocks).unwrap().empty_certified);
    }

    #[test]
    fn unattained_optimum_is_repaired() {
        // 4 simple points on the plane: supremum 2 is not attained
        let o = optimal_test_divisor(&[1; 4], 4, 1, None, None, Solver::Simplex).unwrap();
        assert_eq!(o.threshold, rat_int(2));
        assert!(!o.attained);
        assert!(o.certificate.valid);
        let t = TargetSystem::new(ratio(199, 100), vec![1; 4], None, 1).unwrap();
        let v = certify_empty(&t, Solver::Simplex).unwrap();
        assert!(v.empty_certified);
        assert!(v.best_test_divisor.valid);
        assert!(v.pairing < Rational::zero());
    }

    #[test]
    fn zero_target() {
        let o = optimal_test_divisor(&[0; 3], 3, 1, None, None, Solver::Simplex).unwrap();
        assert_eq!(o.threshold, rat_int(0));
        assert!(o.certificate.valid);
    }

    #[test]
    fn target_validation() {
        assert!(TargetSystem::new(rat_int(1), vec![1, 2], None, 1).is_err());
        assert!(TargetSystem::new(rat_int(1), vec![2, 1], Some(1), 1).is_err());
        let t = TargetSystem::new(rat_int(1), vec![2, 1], Some(4), 1).unwrap();
        assert_eq!(t.b, vec![2, 1, 0, 0]);
        assert_eq!("blocks".parse::<Solver>().unwrap(), Solver::Blocks);
        assert!("greedy".parse::<Solver>().is_err());
    }
}
