//! Brute-force reference implementations and the randomized checks built on
//! them. Shared by the property tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use tfpm::dio::{minimal_homogeneous, minimal_inhomogeneous, DioSystem};
use tfpm::exact::{hnf, kernel_lattice, IntMatrix};
use tfpm::fiber::enumerate_fiber;

pub type Rows = Vec<Vec<i64>>;

pub fn matrix(rows: &Rows) -> IntMatrix {
    IntMatrix::from_rows(rows[0].len(), rows).unwrap()
}

pub fn apply(rows: &Rows, x: &[i64]) -> Vec<i64> {
    rows.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// Every point of `[lo, hi]^n`.
pub fn box_points(n: usize, lo: i64, hi: i64) -> impl Iterator<Item = Vec<i64>> {
    let width = (hi - lo + 1) as u64;
    let total = width.pow(n as u32);
    (0..total).map(move |mut k| {
        (0..n)
            .map(|_| {
                let d = (k % width) as i64;
                k /= width;
                lo + d
            })
            .collect()
    })
}

/// Every non-negative point `y ≤ x` other than `x` itself.
fn strictly_below(x: &[i64]) -> impl Iterator<Item = Vec<i64>> + '_ {
    let total: i64 = x.iter().map(|&v| v + 1).product();
    (0..total).filter_map(move |mut k| {
        let y: Vec<i64> = x
            .iter()
            .map(|&v| {
                let d = k % (v + 1);
                k /= v + 1;
                d
            })
            .collect();
        (y.as_slice() != x).then_some(y)
    })
}

fn leq(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Rank over ℚ by integer row reduction with content removal.
pub fn rational_rank(rows: &Rows) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i == rank || m[i][c] == 0 {
                continue;
            }
            let (a, b) = (m[rank][c], m[i][c]);
            let pivot_row = m[rank].clone();
            for (x, &y) in m[i].iter_mut().zip(&pivot_row) {
                *x = *x * a - y * b;
            }
            let g = m[i].iter().fold(0i128, |g, &x| gcd(g, x.abs()));
            if g > 1 {
                m[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<i64>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0] as i128,
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] as i128 * laplace_det(&minor)
            })
            .sum(),
    }
}

fn multiply(a: &Rows, b: &Rows) -> Vec<Vec<i128>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| (0..cols).map(|j| r.iter().zip(b).map(|(&x, brow)| x as i128 * brow[j] as i128).sum()).collect())
        .collect()
}

pub fn int_rows(rows: usize, cols: usize, range: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = Rows> {
    prop::collection::vec(prop::collection::vec(range, cols), rows)
}

/// A small system `A·x = b` with non-negative variables.
pub fn dio_case() -> impl Strategy<Value = (Rows, Vec<i64>)> {
    (1usize..=2, 2usize..=4).prop_flat_map(|(r, c)| (int_rows(r, c, -3..=3), prop::collection::vec(-3i64..=3, r)))
}

const DIO_BOX: i64 = 6;

/// Solver output against a scan of `[0, 6]^n`: every returned solution is
/// valid and minimal, and every minimal solution inside the box is returned.
pub fn check_dio((rows, rhs): (Rows, Vec<i64>)) -> Result<(), TestCaseError> {
    let n = rows[0].len();
    let zero = vec![0; rows.len()];
    let system = DioSystem::nonneg(matrix(&rows), rhs.clone()).unwrap();
    let solved = minimal_inhomogeneous(&system).unwrap();
    let hom = minimal_homogeneous(&DioSystem::nonneg(matrix(&rows), zero.clone()).unwrap()).unwrap().homogeneous;
    prop_assert_eq!(
        hom.iter().cloned().collect::<BTreeSet<_>>(),
        solved.homogeneous.iter().cloned().collect::<BTreeSet<_>>()
    );

    for (target, found, nonzero) in [(&rhs, &solved.inhomogeneous, false), (&zero, &hom, true)] {
        for x in found.iter() {
            prop_assert!(x.iter().all(|&v| v >= 0), "negative entry in {:?}", x);
            prop_assert_eq!(&apply(&rows, x), target);
            prop_assert!(!nonzero || x.iter().any(|&v| v != 0));
            let cells: i64 = x.iter().map(|&v| v + 1).product();
            if cells <= 200_000 {
                let smaller = strictly_below(x).find(|y| apply(&rows, y) == *target && (!nonzero || y.iter().any(|&v| v != 0)));
                prop_assert!(smaller.is_none(), "{:?} is below {:?}", smaller, x);
            }
        }
        let solutions: Vec<Vec<i64>> =
            box_points(n, 0, DIO_BOX).filter(|x| apply(&rows, x) == *target && (!nonzero || x.iter().any(|&v| v != 0))).collect();
        let found: BTreeSet<&Vec<i64>> = found.iter().collect();
        for x in &solutions {
            let minimal = !solutions.iter().any(|y| y != x && leq(y, x));
            prop_assert_eq!(minimal, found.contains(x), "{:?} for A = {:?}, b = {:?}", x, rows, target);
        }
    }
    Ok(())
}

pub fn kernel_case() -> impl Strategy<Value = Rows> {
    (1usize..=3, 2usize..=5).prop_flat_map(|(r, c)| int_rows(r, c, -3..=3))
}

/// Kernel rank equals `n − rank A`, generators lie in the kernel and every
/// kernel vector in `[-2, 2]^n` is an integer combination of them.
pub fn check_kernel(rows: Rows) -> Result<(), TestCaseError> {
    let n = rows[0].len();
    let lattice = kernel_lattice(&matrix(&rows));
    prop_assert_eq!(lattice.rank(), n - rational_rank(&rows));
    prop_assert_eq!(rational_rank(&lattice.generators().to_vec()), lattice.rank());
    for g in lattice.generators() {
        prop_assert!(apply(&rows, g).iter().all(|&v| v == 0));
    }
    for v in box_points(n, -2, 2).filter(|v| apply(&rows, v).iter().all(|&x| x == 0)) {
        prop_assert!(lattice.contains(&v), "{:?} missing from the kernel of {:?}", v, rows);
    }
    Ok(())
}

/// A non-negative matrix with an all-ones row, and a table in `[0, 2]^n`.
pub fn fiber_case() -> impl Strategy<Value = (Rows, Vec<i64>)> {
    (0usize..=2, 2usize..=5).prop_flat_map(|(r, c)| {
        (int_rows(r, c, 0..=2), prop::collection::vec(0i64..=2, c)).prop_map(move |(mut rows, t)| {
            rows.push(vec![1; c]);
            (rows, t)
        })
    })
}

/// The enumerated fiber through `t` against a scan of `[0, |t|]^n`.
pub fn check_fiber((rows, t): (Rows, Vec<i64>)) -> Result<(), TestCaseError> {
    let margin = apply(&rows, &t);
    let total: i64 = t.iter().sum();
    let expected: BTreeSet<Vec<i64>> = box_points(t.len(), 0, total).filter(|x| apply(&rows, x) == margin).collect();
    let fiber = enumerate_fiber(&matrix(&rows), &margin, usize::MAX).unwrap();
    let found: Vec<Vec<i64>> = fiber.tables().collect();
    prop_assert_eq!(found.len(), expected.len(), "duplicate or missing tables");
    prop_assert_eq!(found.into_iter().collect::<BTreeSet<_>>(), expected);
    Ok(())
}

pub fn hnf_case() -> impl Strategy<Value = Rows> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| int_rows(r, c, -5..=5))
}

/// `H = U·A`, `det U = ±1`, and `H` is in Hermite normal form.
pub fn check_hnf(rows: Rows) -> Result<(), TestCaseError> {
    let (h, u) = hnf(&matrix(&rows)).unwrap();
    let (h, u) = (h.row_vecs(), u.row_vecs());
    let expected: Vec<Vec<i128>> = h.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    prop_assert_eq!(multiply(&u, &rows), expected);
    prop_assert_eq!(laplace_det(&u).abs(), 1);

    let mut last_pivot: Option<usize> = None;
    let mut seen_zero = false;
    for (i, r) in h.iter().enumerate() {
        match r.iter().position(|&x| x != 0) {
            None => seen_zero = true,
            Some(p) => {
                prop_assert!(!seen_zero, "non-zero row {} after a zero row", i);
                prop_assert!(last_pivot.is_none_or(|q| p > q), "pivots not increasing");
                prop_assert!(r[p] > 0);
                for above in &h[..i] {
                    prop_assert!((0..r[p]).contains(&above[p]), "entry {} above pivot {}", above[p], r[p]);
                }
                last_pivot = Some(p);
            }
        }
    }
    prop_assert_eq!(h.iter().filter(|r| r.iter().any(|&x| x != 0)).count(), rational_rank(&rows));
    Ok(())
}
