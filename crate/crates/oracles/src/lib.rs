//! Brute-force reference computations written straight from the set
//! definitions. Nothing here depends on the `seshadri` crate, so the two can
//! be checked against each other.

use std::cmp::Ordering;

/// A nonnegative fraction kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frac {
    pub num: u128,
    pub den: u128,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Frac {
    pub fn new(num: u128, den: u128) -> Self {
        assert!(den > 0);
        let g = gcd(num, den).max(1);
        Frac { num: num / g, den: den / g }
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

pub fn is_square(x: u64) -> bool {
    let mut s = (x as f64).sqrt() as u64;
    while s * s > x {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= x {
        s += 1;
    }
    s * s == x
}

fn isqrt128(x: u128) -> u128 {
    let mut s = (x as f64).sqrt() as u128;
    while s * s > x {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= x {
        s += 1;
    }
    s
}

/// Maximum over `{r/(nd) : r^2 <= n d^2 l} ∪ {dl/r : r^2 >= n d^2 l}`,
/// `1 <= r <= n`, with point count `r + m - 1` for `1 <= m <= mult_cap(d)`.
fn enumerate(n: u64, l: u64, mult_cap: impl Fn(u64) -> u64) -> Frac {
    let (n128, l128) = (n as u128, l as u128);
    let mut best = Frac::new(0, 1);
    let mut d = 1u64;
    loop {
        let d128 = d as u128;
        let cap = mult_cap(d);
        let target = n128 * d128 * d128 * l128;
        for m in 1..=cap {
            for r in 1..=n {
                let big_r = (r + m - 1) as u128;
                if big_r * big_r <= target {
                    best = best.max(Frac::new(big_r, n128 * d128));
                }
                if big_r * big_r >= target {
                    best = best.max(Frac::new(d128 * l128, big_r));
                }
            }
        }
        // Point counts at d' are at most n + cap(d') - 1, which grows no faster
        // than d', so both checks at d + 1 bound every later d' as well.
        let next = d128 + 1;
        let r_max = n128 + mult_cap(d + 1) as u128 - 1;
        let upper_possible = n128 * next * next * l128 <= r_max * r_max;
        let lower_possible = Frac::new(r_max, n128 * next) > best;
        if !upper_possible && !lower_possible {
            break;
        }
        d += 1;
        assert!(d <= 100 * n + 100, "oracle search did not terminate");
    }
    best
}

pub fn oracle_basic(n: u64, l: u64) -> Frac {
    enumerate(n, l, |_| 1)
}

pub fn oracle_refined(n: u64, l: u64) -> Frac {
    enumerate(n, l, |d| if d >= 2 { d - 1 } else { 1 })
}

/// `eps > sqrt(l/n) sqrt(1 - 1/n)`, squared out.
pub fn star_oracle(n: u64, l: u64) -> bool {
    let e = oracle_basic(n, l);
    let (n, l) = (n as u128, l as u128);
    e.num * e.num * n * n > e.den * e.den * l * (n - 1)
}

/// Least `r <= r_max` with `r^2 - N d^2 = ±1` for some `d >= 1`.
pub fn pell_small(radicand: u64, r_max: u64) -> Option<(u128, u128, i8)> {
    let nn = radicand as u128;
    for r in 1..=r_max as u128 {
        for (shift, rhs) in [(-1i8, 1i8), (1, -1)] {
            let x = if shift < 0 { r * r - 1 } else { r * r + 1 };
            if x == 0 || x % nn != 0 {
                continue;
            }
            let dd = x / nn;
            let d = isqrt128(dd);
            if d >= 1 && d * d == dd {
                return Some((r, d, rhs));
            }
        }
    }
    None
}
