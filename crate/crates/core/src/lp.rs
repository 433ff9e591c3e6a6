//! Exact linear feasibility over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::IntMatrix;

/// A point `x ≥ 0` with `A·x = b`, or `None` when the system is infeasible.
///
/// Phase one of the simplex method with Bland's rule, in exact arithmetic.
pub fn find_nonnegative(a: &IntMatrix, b: &[i64]) -> Option<Vec<BigRational>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length");
    let (m, n) = (a.rows(), a.cols());
    let width = n + m + 1;
    let rhs_col = n + m;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for r in 0..m {
        let flip = if b[r] < 0 { -1 } else { 1 };
        let mut row = vec![BigRational::zero(); width];
        for (c, x) in row.iter_mut().take(n).enumerate() {
            *x = rat(flip * a.get(r, c));
        }
        row[n + r] = BigRational::one();
        row[rhs_col] = rat(flip * b[r]);
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // reduced costs of the auxiliary objective (sum of artificials)
    let mut cost = vec![BigRational::zero(); width];
    for row in &t {
        for c in 0..n {
            cost[c] -= &row[c];
        }
        cost[rhs_col] -= &row[rhs_col];
    }
    while let Some(enter) = (0..n + m).find(|&c| cost[c].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..m {
            if !t[r][enter].is_positive() {
                continue;
            }
            let ratio = &t[r][rhs_col] / &t[r][enter];
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let Some((p, _)) = leave else { break };
        pivot(&mut t, &mut cost, p, enter);
        basis[p] = enter;
    }
    if !cost[rhs_col].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (r, &j) in basis.iter().enumerate() {
        if j < n {
            x[j] = t[r][rhs_col].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<BigRational>], cost: &mut [BigRational], p: usize, q: usize) {
    let inv = t[p][q].recip();
    for v in t[p].iter_mut() {
        *v = &*v * &inv;
    }
    let pivot_row = t[p].clone();
    for (r, row) in t.iter_mut().enumerate() {
        if r == p || row[q].is_zero() {
            continue;
        }
        let f = row[q].clone();
        for (v, pv) in row.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
    if !cost[q].is_zero() {
        let f = cost[q].clone();
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            if !pv.is_zero() {
                *v -= &f * pv;
            }
        }
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Scales a rational vector by the least common multiple of its denominators.
pub fn clear_denominators(x: &[BigRational]) -> Vec<BigInt> {
    let l = x.iter().fold(BigInt::one(), |acc, v| num_integer::Integer::lcm(&acc, v.denom()));
    x.iter().map(|v| v.numer() * (&l / v.denom())).collect()
}
