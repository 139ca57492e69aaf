//! Constructors for the certified nef divisors, each instantiating the
//! criterion with explicit coefficients.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{check_nef_criterion, CurveData, NefCertificate};
use crate::bounds::max_multiplicity;
use crate::error::{Error, Result};
use crate::exactmath::{floor, rat_int, Integer, Rational};

/// Sign of `R^2 - n d^2 l` for the effective count `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Above,
    Below,
    Equal,
}

impl Regime {
    pub fn of(r_eff: u64, n: u64, d: u64, l: u64) -> Regime {
        let lhs = BigInt::from(r_eff) * r_eff;
        let rhs = BigInt::from(n) * d * d * l;
        match lhs.cmp(&rhs) {
            Ordering::Greater => Regime::Above,
            Ordering::Less => Regime::Below,
            Ordering::Equal => Regime::Equal,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Above => "above",
            Regime::Below => "below",
            Regime::Equal => "equal",
        })
    }
}

fn q(v: u64) -> Rational {
    rat_int(v)
}

/// Uniform divisor certified against `curve`, whose multiplicities sum to `r_eff`:
/// `r_eff L' - d l sum E` above, `n d L' - r_eff sum E` below, `t L' - sum E` on equality.
fn uniform_against(
    n: u64,
    l: u64,
    r_eff: u64,
    curve: CurveData,
    t: Option<&Rational>,
    tag: &str,
) -> Result<NefCertificate> {
    let d = curve.d;
    let regime = Regime::of(r_eff, n, d, l);
    let (a0, ai) = match regime {
        Regime::Above => (Rational::new(BigInt::from(r_eff), BigInt::from(d)), q(l * d)),
        Regime::Below => (q(n), q(r_eff)),
        Regime::Equal => {
            let t = t.ok_or_else(|| Error::precondition("equality case needs a rational t > sqrt(n/l)"))?;
            if t * t * q(l) <= q(n) {
                return Err(Error::precondition(format!("t = {t} does not satisfy t^2 l > n")));
            }
            (t / q(d), Rational::one())
        }
    };
    let mut cert = check_nef_criterion(&a0, &vec![ai; n as usize], &curve, l)?;
    cert.provenance = format!("{tag}-{regime}");
    Ok(cert)
}

fn positive(vals: &[(&str, u64)]) -> Result<()> {
    for (name, v) in vals {
        if *v == 0 {
            return Err(Error::precondition(format!("{name} must be positive")));
        }
    }
    Ok(())
}

fn check_r(r: u64, n: u64) -> Result<()> {
    if r > n {
        return Err(Error::precondition(format!("r = {r} exceeds n = {n}")));
    }
    Ok(())
}

/// Uniform divisor from a smooth curve of degree `d` through `r` of the points.
pub fn nef_uniform(n: u64, l: u64, r: u64, d: u64, t: Option<&Rational>) -> Result<NefCertificate> {
    positive(&[("n", n), ("l", l), ("r", r), ("d", d)])?;
    check_r(r, n)?;
    uniform_against(n, l, r, CurveData::simple(d, r), t, "uniform")
}

/// Uniform divisor from a curve with one point of multiplicity `m`, so the
/// effective count is `r + m - 1`. Requires `m <= max(1, d - 1)`.
pub fn nef_with_multiplicity(n: u64, l: u64, r: u64, d: u64, m: u64, t: Option<&Rational>) -> Result<NefCertificate> {
    positive(&[("n", n), ("l", l), ("r", r), ("d", d), ("m", m)])?;
    check_r(r, n)?;
    let f = max_multiplicity(d);
    if m > f {
        return Err(Error::precondition(format!("m exceeds f(d): m = {m}, f({d}) = {f}")));
    }
    let mut mults = vec![m];
    mults.extend(std::iter::repeat(1).take(r as usize - 1));
    uniform_against(n, l, r + m - 1, CurveData::new(d, mults)?, t, "multiplicity")
}

/// Divisors of the form `d' L' - E_1 - ... - E_j - c (E_{j+1} + ...)`, zero
/// beyond a cutoff.
///
/// With `d^2 l > r` this is `d L' - (E_1 + ... + E_r)` and `j`, `d'` must be
/// absent. Otherwise `d' >= d` is required: without `j` the divisor is
/// `d' L' - (E_1 + ... + E_{d^2 l})` with `d' > d`; with `0 <= j < d^2 l` the
/// block coefficient is `c = (d^2 l - j)/(r - j)` and the cutoff is
/// `lambda = min(r + (r - d^2 l)(r - j)/(d^2 l - j), n)`, where a fractional
/// `lambda` contributes `frac(lambda) c` at position `ceil(lambda)`; an
/// integral `lambda` needs `d' > d`.
pub fn nef_truncated(n: u64, l: u64, r: u64, d: u64, j: Option<u64>, d_prime: Option<&Rational>) -> Result<NefCertificate> {
    positive(&[("n", n), ("l", l), ("r", r), ("d", d)])?;
    check_r(r, n)?;
    let dd = d * d * l;
    let nu = n as usize;
    if dd > r {
        if j.is_some() || d_prime.is_some() {
            return Err(Error::precondition("j and d' only apply when d^2 l <= r"));
        }
        let mut a = vec![Rational::one(); r as usize];
        a.resize(nu, Rational::zero());
        let mut cert = check_nef_criterion(&Rational::one(), &a, &CurveData::simple(d, r), l)?;
        cert.provenance = "truncated-simple".into();
        return Ok(cert);
    }
    let dp = d_prime.ok_or_else(|| Error::precondition("d^2 l <= r needs a rational d' >= d"))?;
    let d_q = q(d);
    let (a, tag) = match j {
        None => {
            if *dp <= d_q {
                return Err(Error::precondition(format!("d' = {dp} must exceed d = {d}")));
            }
            let mut a = vec![Rational::one(); dd as usize];
            a.resize(nu, Rational::zero());
            (a, "truncated-full")
        }
        Some(j) => {
            if j >= dd {
                return Err(Error::precondition(format!("j = {j} must be below d^2 l = {dd}")));
            }
            let c = Rational::new(BigInt::from(dd - j), BigInt::from(r - j));
            let lambda = (q(r) + Rational::new(BigInt::from((r - dd) * (r - j)), BigInt::from(dd - j))).min(q(n));
            let integral = lambda.is_integer();
            if *dp < d_q || (integral && *dp == d_q) {
                let need = if integral { ">" } else { ">=" };
                return Err(Error::precondition(format!("d' = {dp} must be {need} d = {d} (lambda = {lambda})")));
            }
            let whole = to_usize(&floor(&lambda));
            let mut a = vec![Rational::one(); j as usize];
            a.resize(whole, c.clone());
            if !integral {
                a.push(lambda.fract() * &c);
            }
            a.resize(nu, Rational::zero());
            (a, "truncated-blocks")
        }
    };
    let mut cert = check_nef_criterion(&(dp / d_q), &a, &CurveData::simple(d, r), l)?;
    cert.provenance = tag.into();
    Ok(cert)
}

fn to_usize(x: &Integer) -> usize {
    x.to_string().parse().expect("small index")
}

/// Plane (`l = 1`) divisors with effective count up to `n + d - 1`, using a
/// curve of degree `d >= 4` with multiplicities `(d - 2, 2, 2, 1, ..., 1)` on
/// all `n` points when `r' = n + d - 1`.
pub fn nef_plane_extended(n: u64, d: u64, r_prime: u64) -> Result<NefCertificate> {
    if d < 4 || n < 5 {
        return Err(Error::precondition(format!("needs d >= 4 and n >= 5, got d = {d}, n = {n}")));
    }
    if r_prime == 0 || r_prime > n + d - 1 {
        return Err(Error::precondition(format!("r' = {r_prime} must lie in 1..={}", n + d - 1)));
    }
    if Regime::of(r_prime, n, d, 1) == Regime::Equal {
        return Err(Error::precondition(format!("r'^2 = n d^2 = {} is not covered", r_prime * r_prime)));
    }
    if r_prime <= n + d - 2 {
        let r = n.min(r_prime);
        let mut cert = nef_with_multiplicity(n, 1, r, d, r_prime - r + 1, None)?;
        cert.provenance = format!("plane-extended/{}", cert.provenance);
        return Ok(cert);
    }
    let mut mults = vec![d - 2, 2, 2];
    mults.extend(std::iter::repeat(1).take(n as usize - 3));
    uniform_against(n, 1, r_prime, CurveData::new(d, mults)?, None, "plane-extended")
}

/// Plane divisors from an irreducible member of the pencil spanned by `F^c`
/// and `G^a`: degree `d = a b c`, `a^2 b^2` points of multiplicity `c`, then
/// `r' - a^2 b^2 c` simple points. Requires `c < a` and `gcd(a, c) = 1`; the
/// characteristic condition is recorded as a flag.
pub fn nef_coprime_pencil(n: u64, a: u64, b: u64, c: u64, r_prime: u64) -> Result<NefCertificate> {
    positive(&[("n", n), ("a", a), ("b", b), ("c", c)])?;
    if c >= a {
        return Err(Error::precondition(format!("c = {c} must be less than a = {a}")));
    }
    if a.gcd(&c) != 1 {
        return Err(Error::precondition(format!("gcd(a, c) = {} is not 1", a.gcd(&c))));
    }
    let heavy = a * a * b * b;
    if r_prime < heavy * c {
        return Err(Error::precondition(format!("r' = {r_prime} is below a^2 b^2 c = {}", heavy * c)));
    }
    let simple = r_prime - heavy * c;
    if n < heavy + simple {
        return Err(Error::precondition(format!("n = {n} is below a^2 b^2 + (r' - a^2 b^2 c) = {}", heavy + simple)));
    }
    let d = a * b * c;
    if Regime::of(r_prime, n, d, 1) == Regime::Equal {
        return Err(Error::precondition("r'^2 = n d^2 is not covered"));
    }
    let mut mults = vec![c; heavy as usize];
    mults.extend(std::iter::repeat(1).take(simple as usize));
    let mut cert = uniform_against(n, 1, r_prime, CurveData::new(d, mults)?, None, "coprime-pencil")?;
    cert.flags.push(format!("characteristic does not divide c = {c}"));
    Ok(cert)
}
