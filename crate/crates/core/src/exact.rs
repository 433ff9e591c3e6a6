//! Exact integer linear algebra.
//!
//! Matrices store `i64` entries. Every elimination runs over [`BigInt`] and
//! converts back at the end, so intermediate growth never overflows; only a
//! final result that does not fit in 64 bits is reported as an error.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("result does not fit in 64-bit integers")]
    Overflow,
}

/// A dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self, ExactError> {
        if data.len() != rows * cols {
            return Err(ExactError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from rows. `cols` is needed to give an empty row list a width.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self, ExactError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(ExactError::Dimension(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Result<Self, ExactError> {
        Ok(Self::from_rows(rows, columns)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn entries(&self) -> &[i64] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &IntMatrix) -> Result<Self, ExactError> {
        if self.cols != other.cols {
            return Err(ExactError::Dimension("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<Self, ExactError> {
        Ok(self.transpose().vstack(&other.transpose())?.transpose())
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc += self.get(r, k) as i128 * other.get(k, c) as i128;
                }
                out.data[r * other.cols + c] = i64::try_from(acc).map_err(|_| ExactError::Overflow)?;
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    ///
    /// # Panics
    /// Panics if the vector length differs from the column count or a result
    /// entry overflows `i64`.
    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols, "vector length must equal column count");
        (0..self.rows)
            .map(|r| {
                let acc: i128 = self.row(r).iter().zip(v).map(|(&a, &b)| a as i128 * b as i128).sum();
                i64::try_from(acc).expect("matrix-vector product overflows i64")
            })
            .collect()
    }

    fn to_big(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn from_big(cols: usize, rows: &[Vec<BigInt>]) -> Result<Self, ExactError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            for x in r {
                data.push(x.to_i64().ok_or(ExactError::Overflow)?);
            }
        }
        Ok(Self { rows: rows.len(), cols, data })
    }

    /// Parses the 4ti2 text layout: a `rows cols` header, then the entries.
    pub fn parse(text: &str) -> Result<Self, ExactError> {
        let mut it = text.split_whitespace().map(|t| {
            t.parse::<i64>().map_err(|_| ExactError::Dimension(format!("not an integer: {t}")))
        });
        let rows = it.next().ok_or_else(|| ExactError::Dimension("missing header".into()))??;
        let cols = it.next().ok_or_else(|| ExactError::Dimension("missing header".into()))??;
        if rows < 0 || cols < 0 {
            return Err(ExactError::Dimension("negative dimensions".into()));
        }
        let data = it.collect::<Result<Vec<_>, _>>()?;
        Self::new(rows as usize, cols as usize, data)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// A finite generating set of an integer lattice, kept as a basis in Hermite
/// normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    ambient_dim: usize,
    generators: Vec<Vec<i64>>,
}

impl LatticeBasis {
    /// The lattice spanned by arbitrary (possibly dependent) vectors.
    pub fn spanned_by(ambient_dim: usize, vectors: &[Vec<i64>]) -> Result<Self, ExactError> {
        let m = IntMatrix::from_rows(ambient_dim, vectors)?;
        let (h, _) = hnf_big(&m);
        let nonzero: Vec<Vec<BigInt>> = h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        let generators = IntMatrix::from_big(ambient_dim, &nonzero)?.row_vecs();
        Ok(Self { ambient_dim, generators })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.ambient_dim, &self.generators).expect("generators have ambient length")
    }

    /// Integer coefficients expressing `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        if v.len() != self.ambient_dim {
            return None;
        }
        solve_integer(&self.generator_matrix().transpose(), v).ok().flatten()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coordinates(v).is_some()
    }
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

/// Row-style Hermite normal form over big integers: returns `(H, U)` with `H = U·A`.
fn hnf_big(a: &IntMatrix) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let m = a.rows;
    let n = a.cols;
    let mut h = a.to_big();
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut p = 0;
    for c in 0..n {
        if p == m {
            break;
        }
        loop {
            // Smallest nonzero magnitude at or below p, lowest index on ties.
            let best = (p..m)
                .filter(|&r| !h[r][c].is_zero())
                .min_by(|&x, &y| h[x][c].abs().cmp(&h[y][c].abs()).then(x.cmp(&y)));
            let Some(best) = best else { break };
            h.swap(p, best);
            u.swap(p, best);
            let mut done = true;
            for r in p + 1..m {
                if h[r][c].is_zero() {
                    continue;
                }
                let q = floor_div(&h[r][c], &h[p][c]);
                sub_scaled(&mut h, r, p, &q);
                sub_scaled(&mut u, r, p, &q);
                if !h[r][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[p][c].is_zero() {
            continue;
        }
        if h[p][c].is_negative() {
            negate_row(&mut h[p]);
            negate_row(&mut u[p]);
        }
        for r in 0..p {
            let q = floor_div(&h[r][c], &h[p][c]);
            if !q.is_zero() {
                sub_scaled(&mut h, r, p, &q);
                sub_scaled(&mut u, r, p, &q);
            }
        }
        p += 1;
    }
    (h, u)
}

fn sub_scaled(rows: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let (t, s) = if target < source {
        let (lo, hi) = rows.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn negate_row(row: &mut [BigInt]) {
    for x in row.iter_mut() {
        *x = -&*x;
    }
}

/// Hermite normal form `H = U·A` with `U` unimodular.
///
/// Pivots are positive and entries above each pivot lie in `[0, pivot)`.
pub fn hnf(a: &IntMatrix) -> Result<(IntMatrix, IntMatrix), ExactError> {
    let (h, u) = hnf_big(a);
    Ok((IntMatrix::from_big(a.cols, &h)?, IntMatrix::from_big(a.rows, &u)?))
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMatrix) -> Result<BigInt, ExactError> {
    if a.rows != a.cols {
        return Err(ExactError::Dimension("determinant of a non-square matrix".into()));
    }
    let n = a.rows;
    let mut m = a.to_big();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    Ok(sign * &m[n - 1][n - 1])
}

/// Rank over the rationals by fraction-free elimination.
pub fn rank(a: &IntMatrix) -> usize {
    let mut m = a.to_big();
    let (rows, cols) = (a.rows, a.cols);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[i][j] * &m[r][c] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// A ℤ-basis of `{v ∈ ℤⁿ : A·v = 0}`, returned in Hermite normal form.
pub fn kernel_lattice(a: &IntMatrix) -> LatticeBasis {
    let (h, u) = hnf_big(&a.transpose());
    let kernel: Vec<Vec<i64>> = h
        .iter()
        .zip(u.iter())
        .filter(|(hr, _)| hr.iter().all(|x| x.is_zero()))
        .map(|(_, ur)| ur.iter().map(|x| x.to_i64().expect("kernel entry fits in i64")).collect())
        .collect();
    LatticeBasis::spanned_by(a.cols, &kernel).expect("kernel vectors have ambient length")
}

/// Some integer solution of `A·x = b`, or `None` when no integer solution exists.
pub fn solve_integer(a: &IntMatrix, b: &[i64]) -> Result<Option<Vec<i64>>, ExactError> {
    if b.len() != a.rows {
        return Err(ExactError::Dimension(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows
        )));
    }
    // U·Aᵀ = H, so A·Uᵀ = Hᵀ and x = Uᵀ·y for any y with Hᵀ·y = b.
    let (h, u) = hnf_big(&a.transpose());
    let n = a.cols;
    let mut y = vec![BigInt::zero(); n];
    let mut pivot_of_row = Vec::new();
    for (r, row) in h.iter().enumerate() {
        if let Some(c) = row.iter().position(|x| !x.is_zero()) {
            pivot_of_row.push((r, c));
        }
    }
    let mut next = 0;
    for (j, bj) in b.iter().enumerate() {
        let bj = BigInt::from(*bj);
        let partial: BigInt = pivot_of_row[..next].iter().map(|&(r, _)| &h[r][j] * &y[r]).sum();
        if next < pivot_of_row.len() && pivot_of_row[next].1 == j {
            let (r, _) = pivot_of_row[next];
            let rest = bj - partial;
            let (q, rem) = rest.div_rem(&h[r][j]);
            if !rem.is_zero() {
                return Ok(None);
            }
            y[r] = q;
            next += 1;
        } else if partial != bj {
            return Ok(None);
        }
    }
    let x: Vec<BigInt> = (0..n).map(|i| (0..n).map(|r| &u[r][i] * &y[r]).sum()).collect();
    x.iter().map(|v| v.to_i64().ok_or(ExactError::Overflow)).collect::<Result<Vec<_>, _>>().map(Some)
}

/// Greatest common divisor of the entries (zero for the zero vector).
pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divides a vector by the gcd of its entries.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = content(v);
    if g <= 1 {
        return v.to_vec();
    }
    v.iter().map(|x| x / g).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
