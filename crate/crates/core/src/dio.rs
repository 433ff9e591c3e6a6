//! Minimal solutions of linear Diophantine systems with sign constraints.
//!
//! `A·x = b` is homogenized to the lattice `ker [A | −b]`, whose Graver basis
//! is computed by a completion: sums of sign-conflicting pairs are reduced
//! against the current set and kept when they do not vanish. Minimal solutions
//! are the Graver elements with last coordinate one (inhomogeneous) or zero
//! (homogeneous) that respect the sign pattern.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::exact::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DioError {
    #[error("right-hand side has length {got}, expected {expected}")]
    RhsLength { expected: usize, got: usize },
    #[error("sign pattern has length {got}, expected {expected}")]
    SignLength { expected: usize, got: usize },
    #[error("homogeneous solver called with a non-zero right-hand side")]
    NotHomogeneous,
    #[error("too many variables ({0}); at most 127 are supported")]
    TooManyVariables(usize),
    #[error("malformed input: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Free,
    NonNeg,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Free => "0",
            Sign::NonNeg => "1",
        })
    }
}

/// `A·x = rhs` with per-column sign constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DioSystem {
    a: IntMatrix,
    rhs: Vec<i64>,
    signs: Vec<Sign>,
}

impl DioSystem {
    pub fn new(a: IntMatrix, rhs: Vec<i64>, signs: Vec<Sign>) -> Result<Self, DioError> {
        if rhs.len() != a.rows() {
            return Err(DioError::RhsLength { expected: a.rows(), got: rhs.len() });
        }
        if signs.len() != a.cols() {
            return Err(DioError::SignLength { expected: a.cols(), got: signs.len() });
        }
        Ok(Self { a, rhs, signs })
    }

    /// All variables non-negative.
    pub fn nonneg(a: IntMatrix, rhs: Vec<i64>) -> Result<Self, DioError> {
        let n = a.cols();
        Self::new(a, rhs, vec![Sign::NonNeg; n])
    }

    pub fn homogeneous(a: IntMatrix) -> Self {
        let (m, n) = (a.rows(), a.cols());
        Self { a, rhs: vec![0; m], signs: vec![Sign::NonNeg; n] }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn rhs(&self) -> &[i64] {
        &self.rhs
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn is_satisfied_by(&self, x: &[i64]) -> bool {
        x.len() == self.a.cols()
            && self.a.mul_vec(x) == self.rhs
            && x.iter().zip(&self.signs).all(|(&v, s)| *s == Sign::Free || v >= 0)
    }

    /// Reads the 4ti2 trio `.mat`, `.rhs`, `.sign`; missing rhs or sign mean zero and all non-negative.
    pub fn parse(mat: &str, rhs: Option<&str>, sign: Option<&str>) -> Result<Self, DioError> {
        let a = IntMatrix::parse(mat).map_err(|e| DioError::Parse(e.to_string()))?;
        let rhs = match rhs {
            Some(t) => IntMatrix::parse(t).map_err(|e| DioError::Parse(e.to_string()))?.entries().to_vec(),
            None => vec![0; a.rows()],
        };
        let signs = match sign {
            Some(t) => IntMatrix::parse(t)
                .map_err(|e| DioError::Parse(e.to_string()))?
                .entries()
                .iter()
                .map(|&s| match s {
                    0 => Ok(Sign::Free),
                    1 => Ok(Sign::NonNeg),
                    _ => Err(DioError::Parse(format!("unsupported sign {s}"))),
                })
                .collect::<Result<Vec<_>, _>>()?,
            None => vec![Sign::NonNeg; a.cols()],
        };
        Self::new(a, rhs, signs)
    }

    pub fn rhs_text(&self) -> String {
        vector_text(&self.rhs)
    }

    pub fn sign_text(&self) -> String {
        let s: Vec<String> = self.signs.iter().map(|s| s.to_string()).collect();
        format!("1 {}\n{}\n", s.len(), s.join(" "))
    }
}

fn vector_text(v: &[i64]) -> String {
    let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("1 {}\n{}\n", v.len(), s.join(" "))
}

/// Minimal solutions split into the inhomogeneous and homogeneous parts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MinimalSolutionSet {
    pub inhomogeneous: Vec<Vec<i64>>,
    pub homogeneous: Vec<Vec<i64>>,
}

impl MinimalSolutionSet {
    /// Solution rows in the 4ti2 layout (`.zinhom` or `.zhom`).
    pub fn to_text(rows: &[Vec<i64>], cols: usize) -> String {
        let mut out = format!("{} {}\n", rows.len(), cols);
        for r in rows {
            let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            out.push_str(&s.join(" "));
            out.push('\n');
        }
        out
    }
}

type Mask = u128;

/// A lattice vector with cached sign supports.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Signed {
    v: Vec<i64>,
    pos: Mask,
    neg: Mask,
    norm: i64,
}

impl Signed {
    fn new(v: Vec<i64>) -> Self {
        let mut pos = 0;
        let mut neg = 0;
        for (i, &x) in v.iter().enumerate() {
            if x > 0 {
                pos |= 1 << i;
            } else if x < 0 {
                neg |= 1 << i;
            }
        }
        let norm = v.iter().map(|x| x.abs()).sum();
        Self { v, pos, neg, norm }
    }

    fn is_zero(&self) -> bool {
        self.pos == 0 && self.neg == 0
    }

    /// `self ⊑ other`: same signs and no larger magnitudes.
    fn conformal_le(&self, other: &Signed) -> bool {
        self.pos & !other.pos == 0
            && self.neg & !other.neg == 0
            && self.norm <= other.norm
            && self.v.iter().zip(&other.v).all(|(a, b)| a.abs() <= b.abs())
    }

    fn sign_conflict(&self, other: &Signed) -> bool {
        self.pos & other.neg != 0 || self.neg & other.pos != 0
    }
}

/// The Graver basis (conformally minimal non-zero elements) of the lattice
/// spanned by `generators`, by Pottier's completion.
///
/// Elements come in `±` pairs.
pub fn graver_basis(generators: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let Some(n) = generators.first().map(Vec::len) else { return Vec::new() };
    assert!(n <= 127, "at most 127 coordinates are supported");
    let mut basis: Vec<Signed> = Vec::new();
    let mut pending: BTreeMap<i64, Vec<Signed>> = BTreeMap::new();
    let push = |s: Signed, pending: &mut BTreeMap<i64, Vec<Signed>>| {
        pending.entry(s.norm).or_default().push(s);
    };
    for g in generators {
        push(Signed::new(g.clone()), &mut pending);
        push(Signed::new(g.iter().map(|x| -x).collect()), &mut pending);
    }
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    while let Some((&norm, _)) = pending.iter().next() {
        let batch = pending.remove(&norm).unwrap_or_default();
        for s in batch {
            let Some(f) = normal_form(s, &basis) else { continue };
            if !seen.insert(f.v.clone()) {
                continue;
            }
            for g in &basis {
                if f.sign_conflict(g) {
                    let sum: Vec<i64> = f.v.iter().zip(&g.v).map(|(a, b)| a + b).collect();
                    let sum = Signed::new(sum);
                    if !sum.is_zero() {
                        push(sum, &mut pending);
                    }
                }
            }
            basis.push(f);
        }
    }
    let minimal: Vec<Vec<i64>> = basis
        .iter()
        .filter(|g| !basis.iter().any(|h| h.v != g.v && h.conformal_le(g)))
        .map(|g| g.v.clone())
        .collect();
    minimal
}

fn normal_form(mut s: Signed, basis: &[Signed]) -> Option<Signed> {
    loop {
        if s.is_zero() {
            return None;
        }
        let Some(g) = basis.iter().find(|g| g.conformal_le(&s)) else { return Some(s) };
        let v: Vec<i64> = s.v.iter().zip(&g.v).map(|(a, b)| a - b).collect();
        s = Signed::new(v);
    }
}

fn solve(system: &DioSystem, homogenize: bool) -> Result<MinimalSolutionSet, DioError> {
    let n = system.a.cols();
    if n + 1 > 127 {
        return Err(DioError::TooManyVariables(n));
    }
    let mut a = system.a.clone();
    if homogenize {
        let rhs: Vec<i64> = system.rhs.iter().map(|x| -x).collect();
        let col = IntMatrix::from_columns(system.a.rows(), &[rhs]).expect("rhs length checked");
        a = a.hstack(&col).expect("row counts agree");
    }
    let lattice = crate::exact::kernel_lattice(&a);
    let graver = graver_basis(lattice.generators());
    let mut out = MinimalSolutionSet::default();
    let feasible = |x: &[i64]| x.iter().zip(&system.signs).all(|(&v, s)| *s == Sign::Free || v >= 0);
    for g in graver {
        let t = if homogenize { g[n] } else { 0 };
        let x = &g[..n];
        match t {
            0 if feasible(x) => out.homogeneous.push(x.to_vec()),
            1 if feasible(x) => out.inhomogeneous.push(x.to_vec()),
            _ => {}
        }
    }
    out.inhomogeneous.sort();
    out.homogeneous.sort();
    Ok(out)
}

/// Early-stopping Contejean–Devie search for one solution of a system with
/// only non-negative variables.
struct Completion<'a> {
    columns: &'a [Vec<i64>],
    rhs: &'a [i64],
}

impl Completion<'_> {
    fn first(&self) -> Option<Vec<i64>> {
        let n = self.columns.len();
        let m = self.rhs.len();
        let start: Vec<i64> = self.rhs.iter().map(|x| -x).collect();
        if start.iter().all(|&v| v == 0) {
            return Some(vec![0; n]);
        }
        let mut frontier: Vec<(Vec<u32>, Vec<i64>)> = vec![(vec![0; n], start)];
        while !frontier.is_empty() {
            let mut seen: HashSet<Vec<u32>> = HashSet::new();
            let mut next = Vec::new();
            for (x, ax) in &frontier {
                for j in 0..n {
                    let col = &self.columns[j];
                    let inner: i64 = ax.iter().zip(col).map(|(a, c)| a * c).sum();
                    if inner >= 0 {
                        continue;
                    }
                    let mut y = x.clone();
                    y[j] += 1;
                    if !seen.insert(y.clone()) {
                        continue;
                    }
                    let ay: Vec<i64> = (0..m).map(|r| ax[r] + col[r]).collect();
                    if ay.iter().all(|&v| v == 0) {
                        return Some(y.into_iter().map(i64::from).collect());
                    }
                    next.push((y, ay));
                }
            }
            frontier = next;
        }
        None
    }
}

/// Minimal non-zero solutions of `A·x = 0`.
pub fn minimal_homogeneous(system: &DioSystem) -> Result<MinimalSolutionSet, DioError> {
    if system.rhs.iter().any(|&b| b != 0) {
        return Err(DioError::NotHomogeneous);
    }
    solve(system, false)
}

/// Minimal solutions of `A·x = rhs` together with the homogeneous ones.
///
/// An infeasible system yields an empty inhomogeneous list.
pub fn minimal_inhomogeneous(system: &DioSystem) -> Result<MinimalSolutionSet, DioError> {
    solve(system, true)
}

/// Some solution of `A·x = rhs` with all variables non-negative, found by a
/// completion search that stops at the first hit.
///
/// # Panics
/// Panics if the system has a free variable.
pub fn find_solution(system: &DioSystem) -> Option<Vec<i64>> {
    assert!(system.signs.iter().all(|s| *s == Sign::NonNeg), "find_solution needs non-negative variables");
    let columns: Vec<Vec<i64>> = (0..system.a.cols()).map(|j| system.a.column(j)).collect();
    Completion { columns: &columns, rhs: &system.rhs }.first()
}
