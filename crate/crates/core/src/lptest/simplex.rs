//! Dense exact simplex for `max c.x` subject to `A x <= b`, `x >= 0`, `b >= 0`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::Rational;

/// Optimal value and a maximizing point. Bland's rule guarantees termination
/// on the degenerate vertices that ordering constraints produce.
pub fn maximize(c: &[Rational], a: &[Vec<Rational>], b: &[Rational]) -> Result<(Rational, Vec<Rational>)> {
    let nv = c.len();
    let m = a.len();
    if b.len() != m || a.iter().any(|row| row.len() != nv) {
        return Err(Error::domain("constraint dimensions do not match"));
    }
    if b.iter().any(|x| x.is_negative()) {
        return Err(Error::domain("right-hand sides must be nonnegative"));
    }
    let width = nv + m;
    let mut tab: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut t = row.clone();
            t.resize(width, Rational::zero());
            t[nv + i] = Rational::from_integer(1.into());
            t
        })
        .collect();
    let mut rhs = b.to_vec();
    let mut basis: Vec<usize> = (nv..width).collect();
    let mut z: Vec<Rational> = c.iter().map(|x| -x).collect();
    z.resize(width, Rational::zero());
    let mut value = Rational::zero();

    loop {
        let Some(enter) = (0..width).find(|&j| z[j].is_negative()) else { break };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if tab[i][enter].is_positive() {
                let ratio = &rhs[i] / &tab[i][enter];
                let better = match &leave {
                    None => true,
                    Some((k, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((row, _)) = leave else { return Err(Error::Unbounded) };
        let piv = tab[row][enter].clone();
        for x in tab[row].iter_mut() {
            *x /= &piv;
        }
        rhs[row] /= &piv;
        let pivot_row = tab[row].clone();
        let pivot_rhs = rhs[row].clone();
        for i in 0..m {
            if i != row && !tab[i][enter].is_zero() {
                let f = tab[i][enter].clone();
                for (x, p) in tab[i].iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
                rhs[i] -= &f * &pivot_rhs;
            }
        }
        if !z[enter].is_zero() {
            let f = z[enter].clone();
            for (x, p) in z.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            value -= &f * &pivot_rhs;
        }
        basis[row] = enter;
    }
    let mut x = vec![Rational::zero(); nv];
    for (i, &v) in basis.iter().enumerate() {
        if v < nv {
            x[v] = rhs[i].clone();
        }
    }
    Ok((value, x))
}
