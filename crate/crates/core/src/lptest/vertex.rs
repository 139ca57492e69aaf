//! Block-structured solver: in the gap variables `g_k = a_k - a_{k+1}` the
//! program has three constraints, so an optimal vertex has at most three
//! nonzero gaps, i.e. `a` is constant on at most three blocks.

use num_traits::Zero;

use crate::exactmath::Rational;

/// Maximizes `sum a_i b_i` over `1 >= a_1 >= ... >= a_n >= 0`,
/// `a_1 + ... + a_r <= cap`, `a_1 + ... + a_n <= r`.
pub fn solve(b: &[Rational], r: usize, cap: u64) -> (Rational, Vec<Rational>) {
    let n = b.len();
    // column k (1-based): (1, min(k, r), k), cost B_k = b_1 + ... + b_k
    let cols: Vec<[i128; 3]> = (1..=n).map(|k| [1, k.min(r) as i128, k as i128]).collect();
    let mut prefix = Vec::with_capacity(n);
    let mut acc = Rational::zero();
    for x in b {
        acc += x;
        prefix.push(acc.clone());
    }
    let rhs = [1i128, cap as i128, r as i128];

    let mut best = Rational::zero();
    let mut best_g: Vec<(usize, Rational)> = Vec::new();
    for size in 1..=3.min(n) {
        for support in combinations(n, size) {
            for rows in combinations(3, size) {
                let Some((nums, den)) = solve_square(&cols, &support, &rows, &rhs) else { continue };
                if nums.iter().any(|&x| x < 0) {
                    continue;
                }
                let feasible = (0..3).all(|c| {
                    let lhs: i128 = support.iter().zip(&nums).map(|(&k, x)| cols[k][c] * x).sum();
                    lhs <= rhs[c] * den
                });
                if !feasible {
                    continue;
                }
                let den = Rational::from_integer(den.into());
                let g: Vec<Rational> = nums.iter().map(|&x| Rational::from_integer(x.into()) / &den).collect();
                let value: Rational = support.iter().zip(&g).map(|(&k, x)| &prefix[k] * x).sum();
                if value > best {
                    best = value;
                    best_g = support.iter().cloned().zip(g).collect();
                }
            }
        }
    }
    let mut a = vec![Rational::zero(); n];
    for (k, g) in best_g {
        for x in a.iter_mut().take(k + 1) {
            *x += &g;
        }
    }
    (best, a)
}

/// Cramer's rule on the square subsystem; returns numerators over a positive
/// common denominator.
fn solve_square(cols: &[[i128; 3]], support: &[usize], rows: &[usize], rhs: &[i128; 3]) -> Option<(Vec<i128>, i128)> {
    let s = support.len();
    let m: Vec<Vec<i128>> = rows.iter().map(|&c| support.iter().map(|&k| cols[k][c]).collect()).collect();
    let det = det(&m);
    if det == 0 {
        return None;
    }
    let sign = det.signum();
    let nums = (0..s)
        .map(|j| {
            let mut mj = m.clone();
            for (i, &c) in rows.iter().enumerate() {
                mj[i][j] = rhs[c];
            }
            sign * self::det(&mj)
        })
        .collect();
    Some((nums, det.abs()))
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        3 => {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => unreachable!("at most three constraints"),
    }
}

/// All increasing `k`-subsets of `0..n`.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}
