//! Divisor classes on a blow-up at `n` points, the intersection pairing, and
//! certificates for the five-condition nefness criterion.

mod build;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{floor, Integer, Rational};

pub use build::{
    nef_coprime_pencil, nef_plane_extended, nef_truncated, nef_uniform, nef_with_multiplicity, Regime,
};

/// `c0 L' - sum e_i E_i` on the blow-up of a surface with `L^2 = l` at `n` points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupDivisorClass {
    pub n: u64,
    pub l: u64,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub c0: Rational,
    #[serde(with = "crate::exactmath::serde_rational_vec")]
    pub e: Vec<Rational>,
}

impl BlowupDivisorClass {
    pub fn new(l: u64, c0: Rational, e: Vec<Rational>) -> Self {
        BlowupDivisorClass { n: e.len() as u64, l, c0, e }
    }

    pub fn uniform(n: u64, l: u64, c0: Rational, e: Rational) -> Self {
        BlowupDivisorClass { n, l, c0, e: vec![e; n as usize] }
    }

    pub fn pullback(n: u64, l: u64) -> Self {
        Self::uniform(n, l, Rational::one(), Rational::zero())
    }

    /// The exceptional curve over point `i` (1-based).
    pub fn exceptional(n: u64, l: u64, i: usize) -> Self {
        let mut e = vec![Rational::zero(); n as usize];
        e[i - 1] = -Rational::one();
        BlowupDivisorClass { n, l, c0: Rational::zero(), e }
    }

    pub fn pairing(&self, other: &Self) -> Result<Rational> {
        if self.n != other.n || self.l != other.l || self.e.len() != other.e.len() {
            return Err(Error::domain(format!(
                "cannot pair classes on (n={}, l={}) and (n={}, l={})",
                self.n, self.l, other.n, other.l
            )));
        }
        let mut v = &self.c0 * &other.c0 * Rational::from_integer(BigInt::from(self.l));
        for (a, b) in self.e.iter().zip(&other.e) {
            v -= a * b;
        }
        Ok(v)
    }

    pub fn self_pairing(&self) -> Rational {
        self.pairing(self).expect("same class")
    }

    /// The common coefficient when all `e_i` agree.
    pub fn uniform_coefficient(&self) -> Option<&Rational> {
        let first = self.e.first()?;
        self.e.iter().all(|x| x == first).then_some(first)
    }
}

impl fmt::Display for BlowupDivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})L'", self.c0)?;
        if let Some(c) = self.uniform_coefficient() {
            if !c.is_zero() {
                return write!(f, " - ({c})(E1+...+E{})", self.n);
            }
            return Ok(());
        }
        let mut i = 0;
        while i < self.e.len() {
            let mut j = i;
            while j + 1 < self.e.len() && self.e[j + 1] == self.e[i] {
                j += 1;
            }
            if !self.e[i].is_zero() {
                if i == j {
                    write!(f, " - ({})E{}", self.e[i], i + 1)?;
                } else {
                    write!(f, " - ({})(E{}+...+E{})", self.e[i], i + 1, j + 1)?;
                }
            }
            i = j + 1;
        }
        Ok(())
    }
}

/// `d L' - m_1 E'_1 - ... - m_r E'_r`, the class of an irreducible curve used
/// by the criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveData {
    pub d: u64,
    pub mults: Vec<u64>,
}

impl CurveData {
    pub fn new(d: u64, mults: Vec<u64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("curve degree must be positive"));
        }
        if mults.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::domain("curve multiplicities must be nonincreasing"));
        }
        Ok(CurveData { d, mults })
    }

    /// `d` with `r` simple points.
    pub fn simple(d: u64, r: u64) -> Self {
        CurveData { d, mults: vec![1; r as usize] }
    }

    pub fn r(&self) -> usize {
        self.mults.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NefChecks {
    /// `a_1 >= ... >= a_n >= 0`
    pub ordered: bool,
    /// `a_0 d^2 l >= sum_{i<=r} a_i m_i`
    pub degree: bool,
    /// `a_0^2 d^2 l > sum a_i^2`
    pub self_intersection: bool,
    /// `(m_1 + ... + m_i) a_0 >= a_1 + ... + a_i` for `i <= r`
    pub partial_sums: bool,
    /// `(m_1 + ... + m_r) a_0 >= a_1 + ... + a_n`
    pub total_sum: bool,
}

impl NefChecks {
    pub fn all(&self) -> bool {
        self.ordered && self.degree && self.self_intersection && self.partial_sums && self.total_sum
    }

    pub fn failures(&self) -> Vec<&'static str> {
        [
            (self.ordered, "ordered"),
            (self.degree, "degree"),
            (self.self_intersection, "self_intersection"),
            (self.partial_sums, "partial_sums"),
            (self.total_sum, "total_sum"),
        ]
        .into_iter()
        .filter(|(ok, _)| !ok)
        .map(|(_, name)| name)
        .collect()
    }
}

/// A divisor, the curve it was tested against, and the per-check verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NefCertificate {
    #[serde(flatten)]
    pub divisor: BlowupDivisorClass,
    pub curve: CurveData,
    pub checks: NefChecks,
    pub valid: bool,
    pub provenance: String,
    pub flags: Vec<String>,
}

impl NefCertificate {
    /// `a_0 = c0/d`.
    pub fn a0(&self) -> Rational {
        &self.divisor.c0 / Rational::from_integer(BigInt::from(self.curve.d))
    }

    /// `e/c0` for a uniform divisor: the Seshadri lower bound it certifies.
    pub fn bound_value(&self) -> Option<Rational> {
        let c = self.divisor.uniform_coefficient()?;
        (!self.divisor.c0.is_zero()).then(|| c / &self.divisor.c0)
    }

    /// Re-evaluates the checks from the stored divisor and curve.
    pub fn recheck(&self) -> Result<NefCertificate> {
        let mut cert = check_nef_criterion(&self.a0(), &self.divisor.e, &self.curve, self.divisor.l)?;
        cert.provenance = self.provenance.clone();
        cert.flags = self.flags.clone();
        Ok(cert)
    }
}

impl fmt::Display for NefCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.divisor, if self.valid { "nef" } else { "not certified" })?;
        let failed = self.checks.failures();
        if !failed.is_empty() {
            write!(f, " failed: {}", failed.join(", "))?;
        }
        for flag in &self.flags {
            write!(f, " (assumes {flag})")?;
        }
        Ok(())
    }
}

/// A divisor and curve to be checked, as read from JSON. Accepts a full
/// certificate; stored verdicts are ignored and recomputed.
#[derive(Debug, Clone, Deserialize)]
pub struct CertificateInput {
    #[serde(default)]
    pub n: Option<u64>,
    pub l: u64,
    #[serde(with = "crate::exactmath::serde_rational")]
    pub c0: Rational,
    #[serde(with = "crate::exactmath::serde_rational_vec")]
    pub e: Vec<Rational>,
    pub curve: CurveData,
    #[serde(default)]
    pub provenance: Option<String>,
    #[serde(default)]
    pub flags: Vec<String>,
}

impl CertificateInput {
    pub fn check(&self) -> Result<NefCertificate> {
        if let Some(n) = self.n {
            if n as usize != self.e.len() {
                return Err(Error::domain(format!("n = {n} but {} coefficients given", self.e.len())));
            }
        }
        let curve = CurveData::new(self.curve.d, self.curve.mults.clone())?;
        let a0 = &self.c0 / Rational::from_integer(BigInt::from(curve.d));
        let mut cert = check_nef_criterion(&a0, &self.e, &curve, self.l)?;
        cert.provenance = self.provenance.clone().unwrap_or_else(|| "input".into());
        cert.flags = self.flags.clone();
        Ok(cert)
    }
}

/// Evaluates the five conditions for `(a_0 d) L' - sum a_i E_i` against the
/// curve class `d L' - sum m_i E_i`.
pub fn check_nef_criterion(a0: &Rational, a: &[Rational], curve: &CurveData, l: u64) -> Result<NefCertificate> {
    let r = curve.r();
    if r > a.len() {
        return Err(Error::domain(format!("curve has {r} points but the divisor only {}", a.len())));
    }
    // Everything over the common denominator D: x = X / D.
    let den = a.iter().fold(a0.denom().clone(), |acc, x| acc.lcm(x.denom()));
    let scale = |x: &Rational| x.numer() * (&den / x.denom());
    let big_a0 = scale(a0);
    let big_a: Vec<Integer> = a.iter().map(scale).collect();
    let dd_l = Integer::from(curve.d) * Integer::from(curve.d) * Integer::from(l);
    let m: Vec<Integer> = curve.mults.iter().map(|&x| Integer::from(x)).collect();

    let ordered = big_a.windows(2).all(|w| w[0] >= w[1]) && big_a.last().map_or(true, |x| !x.is_negative());
    let weighted: Integer = big_a.iter().zip(&m).map(|(x, y)| x * y).sum();
    let degree = &big_a0 * &dd_l >= weighted;
    let squares: Integer = big_a.iter().map(|x| x * x).sum();
    let self_intersection = &big_a0 * &big_a0 * &dd_l > squares;
    let mut partial_sums = true;
    let (mut m_sum, mut a_sum) = (Integer::zero(), Integer::zero());
    for i in 0..r {
        m_sum += &m[i];
        a_sum += &big_a[i];
        if &m_sum * &big_a0 < a_sum {
            partial_sums = false;
        }
    }
    let total: Integer = big_a.iter().sum();
    let total_sum = &m_sum * &big_a0 >= total;
    let d = Rational::from_integer(BigInt::from(curve.d));

    let checks = NefChecks { ordered, degree, self_intersection, partial_sums, total_sum };
    Ok(NefCertificate {
        divisor: BlowupDivisorClass::new(l, a0 * &d, a.to_vec()),
        curve: curve.clone(),
        valid: checks.all(),
        checks,
        provenance: "direct".to_string(),
        flags: Vec::new(),
    })
}

/// The smallest rational strictly above `x` whose denominator is at most `max_den`.
pub fn smallest_rational_above(x: &Rational, max_den: u64) -> Rational {
    assert!(max_den >= 1);
    let cap = Integer::from(max_den);
    let base = floor(x);
    // Stern-Brocot neighbours lo <= x < hi; everything strictly between
    // them has denominator at least lo.q + hi.q.
    let (mut lp, mut lq) = (base.clone(), Integer::one());
    let (mut hp, mut hq) = (base + 1u32, Integer::one());
    let xn = x.numer();
    let xd = x.denom();
    loop {
        // advance lo towards hi: lo + k hi <= x
        let gap_hi = &hp * xd - xn * &hq; // > 0
        let gap_lo = xn * &lq - &lp * xd; // >= 0
        let k_den = (&cap - &lq) / &hq;
        let k = (&gap_lo / &gap_hi).min(k_den);
        if k > Integer::zero() {
            lp += &k * &hp;
            lq += &k * &hq;
            continue;
        }
        // advance hi towards lo: hi + k lo > x
        let gap_lo = xn * &lq - &lp * xd;
        let k_den = (&cap - &hq) / &lq;
        let k = if gap_lo.is_zero() {
            k_den
        } else {
            let q = &gap_hi / &gap_lo;
            let k_strict = if (&q * &gap_lo) == gap_hi { q - 1u32 } else { q };
            k_strict.min(k_den)
        };
        if k > Integer::zero() {
            hp += &k * &lp;
            hq += &k * &lq;
            continue;
        }
        return Rational::new(hp, hq);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat_int, ratio};

    fn ones(n: usize) -> Vec<Rational> {
        vec![rat_int(1); n]
    }

    #[test]
    fn pairing_examples() {
        let mut e1 = ones(7);
        e1.iter_mut().for_each(|x| *x = rat_int(3));
        let f = BlowupDivisorClass::new(1, rat_int(8), e1);
        let mut e2 = ones(7);
        e2[0] = rat_int(2);
        let e = BlowupDivisorClass::new(1, rat_int(3), e2);
        assert_eq!(f.pairing(&e).unwrap(), rat_int(0));

        let f = BlowupDivisorClass::uniform(8, 1, rat_int(17), rat_int(6));
        let mut e2 = vec![rat_int(2); 8];
        e2[0] = rat_int(3);
        let e = BlowupDivisorClass::new(1, rat_int(6), e2);
        assert_eq!(f.pairing(&e).unwrap(), rat_int(0));

        assert_eq!(BlowupDivisorClass::pullback(3, 5).self_pairing(), rat_int(5));
        assert_eq!(BlowupDivisorClass::exceptional(3, 5, 2).self_pairing(), rat_int(-1));
        assert!(f.pairing(&BlowupDivisorClass::pullback(8, 2)).is_err());
        assert!(f.pairing(&BlowupDivisorClass::pullback(7, 1)).is_err());
    }

    #[test]
    fn criterion_examples() {
        let c = check_nef_criterion(&ratio(23, 4), &vec![rat_int(4); 33], &CurveData::simple(4, 23), 1).unwrap();
        assert!(c.valid);
        assert_eq!(c.divisor.c0, rat_int(23));
        assert_eq!(c.bound_value(), Some(ratio(4, 23)));

        let c = check_nef_criterion(&rat_int(1), &vec![rat_int(0); 5], &CurveData::simple(2, 3), 1).unwrap();
        assert!(c.valid);

        let c = check_nef_criterion(&rat_int(5), &vec![rat_int(3); 5], &CurveData::simple(1, 3), 1).unwrap();
        assert!(!c.valid);
        assert!(!c.checks.self_intersection);
        assert!(c.checks.failures().contains(&"self_intersection"));

        assert!(check_nef_criterion(&rat_int(1), &ones(2), &CurveData::simple(1, 3), 1).is_err());
    }

    #[test]
    fn criterion_detects_each_failure() {
        let curve = CurveData::simple(1, 2);
        let c = check_nef_criterion(&rat_int(2), &[rat_int(1), rat_int(2)], &curve, 4).unwrap();
        assert!(!c.checks.ordered);
        let c = check_nef_criterion(&rat_int(1), &[rat_int(1), rat_int(-1)], &curve, 4).unwrap();
        assert!(!c.checks.ordered);
        let c = check_nef_criterion(&rat_int(1), &[rat_int(3), rat_int(3)], &CurveData::simple(1, 2), 5).unwrap();
        assert!(!c.checks.degree);
        assert!(!c.checks.partial_sums);
        let c = check_nef_criterion(&rat_int(1), &[rat_int(1), rat_int(1), rat_int(1)], &CurveData::simple(2, 2), 1).unwrap();
        assert!(!c.checks.total_sum);
        assert!(c.checks.partial_sums);
    }

    #[test]
    fn curve_validation() {
        assert!(CurveData::new(0, vec![]).is_err());
        assert!(CurveData::new(3, vec![1, 2]).is_err());
        assert!(CurveData::new(3, vec![2, 1, 1]).is_ok());
    }

    #[test]
    fn json_shape() {
        let c = check_nef_criterion(&ratio(23, 4), &vec![rat_int(4); 3], &CurveData::simple(4, 3), 1).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["c0"], "23");
        assert_eq!(v["e"][0], "4");
        assert_eq!(v["n"], 3);
        assert_eq!(v["curve"]["d"], 4);
        assert!(v["checks"]["self_intersection"].is_boolean());
        let back: NefCertificate = serde_json::from_value(v.clone()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.recheck().unwrap(), c);
        let input: CertificateInput = serde_json::from_value(v).unwrap();
        assert_eq!(input.check().unwrap(), c);
        let bare: CertificateInput =
            serde_json::from_str(r#"{"l": 1, "c0": "31/10", "e": ["1", "1/2"], "curve": {"d": 3, "mults": [1, 1]}}"#).unwrap();
        assert!(bare.check().unwrap().valid);
    }

    #[test]
    fn rational_above() {
        assert_eq!(smallest_rational_above(&rat_int(3), 10), ratio(31, 10));
        assert_eq!(smallest_rational_above(&rat_int(4), 1_000_000), ratio(4_000_001, 1_000_000));
        assert_eq!(smallest_rational_above(&ratio(1, 2), 5), ratio(3, 5));
        assert_eq!(smallest_rational_above(&ratio(1, 3), 4), ratio(1, 2));
        assert_eq!(smallest_rational_above(&ratio(-1, 2), 3), ratio(-1, 3));
        assert_eq!(smallest_rational_above(&ratio(2, 7), 3), ratio(1, 3));
    }

    #[test]
    fn rational_above_matches_enumeration() {
        for num in -20i64..40 {
            for den in 1..13i64 {
                let x = ratio(num, den);
                for cap in 1..15u64 {
                    let mut best: Option<Rational> = None;
                    for q in 1..=cap as i64 {
                        let p = floor(&(&x * rat_int(q))) + 1;
                        let cand = Rational::new(p, q.into());
                        if best.as_ref().map_or(true, |b| &cand < b) {
                            best = Some(cand);
                        }
                    }
                    assert_eq!(smallest_rational_above(&x, cap), best.unwrap(), "x={x} cap={cap}");
                }
            }
        }
    }
}
