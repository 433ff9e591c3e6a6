//! Rational polyhedral cones spanned by integer vectors: facets, Hilbert
//! bases and semigroup membership.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::dio::{self, DioSystem};
use crate::exact::{self, IntMatrix, LatticeBasis};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error("a cone needs at least one generator")]
    Empty,
    #[error("generator {index} has length {got}, expected {expected}")]
    Length { index: usize, expected: usize, got: usize },
    #[error("generator {0} is zero")]
    ZeroGenerator(usize),
}

/// The generators of a cone, for instance the columns of a design matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeGenerators {
    ambient_dim: usize,
    generators: Vec<Vec<i64>>,
}

impl ConeGenerators {
    pub fn new(ambient_dim: usize, generators: Vec<Vec<i64>>) -> Result<Self, ConeError> {
        if generators.is_empty() {
            return Err(ConeError::Empty);
        }
        for (index, g) in generators.iter().enumerate() {
            if g.len() != ambient_dim {
                return Err(ConeError::Length { index, expected: ambient_dim, got: g.len() });
            }
            if g.iter().all(|&x| x == 0) {
                return Err(ConeError::ZeroGenerator(index));
            }
        }
        Ok(Self { ambient_dim, generators })
    }

    pub fn from_columns(m: &IntMatrix) -> Result<Self, ConeError> {
        Self::new(m.rows(), m.column_vecs())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    fn matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(self.ambient_dim, &self.generators).expect("lengths checked")
    }
}

/// `F·x ≥ 0` for every row of `inequalities` and `E·x = 0` for every row of `equations`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetSystem {
    pub inequalities: Vec<Vec<i64>>,
    pub equations: Vec<Vec<i64>>,
    pub lineality_dim: usize,
}

impl FacetSystem {
    pub fn contains(&self, v: &[i64]) -> bool {
        self.inequalities.iter().all(|f| exact::dot(f, v) >= 0) && self.equations.iter().all(|e| exact::dot(e, v) == 0)
    }
}

impl fmt::Display for FacetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dim = self.inequalities.first().or(self.equations.first()).map_or(0, Vec::len);
        for (name, rows) in [("inequalities", &self.inequalities), ("equations", &self.equations)] {
            writeln!(f, "{name}")?;
            write!(f, "{}", IntMatrix::from_rows(dim, rows).expect("rows share a length"))?;
        }
        Ok(())
    }
}

type Bits = u128;

#[derive(Clone)]
struct Ray {
    v: Vec<i64>,
    zeros: Bits,
}

/// Columns where successive rows first raise the rank.
fn pivot_columns(rows: &[Vec<i64>]) -> Vec<usize> {
    let l = LatticeBasis::spanned_by(rows[0].len(), rows).expect("rows share a length");
    l.generators().iter().map(|g| g.iter().position(|&x| x != 0).expect("non-zero HNF row")).collect()
}

fn inverse(rows: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> = r.iter().map(|&x| BigRational::from_integer(x.into())).collect();
            row.extend((0..n).map(|j| BigRational::from_integer(BigInt::from((i == j) as i64))));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = m[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot) {
                    *v -= &f * pv;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn primitive_integer(v: &[BigRational]) -> Vec<i64> {
    let ints = crate::lp::clear_denominators(v);
    let ints: Vec<i64> = ints.iter().map(|x| x.to_i64().expect("ray entry fits in i64")).collect();
    exact::primitive(&ints)
}

/// Extreme rays of the pointed cone `{a : G·a ≥ 0}`, where `G` has full column rank.
fn dual_extreme_rays(g: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = g[0].len();
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..g.len() {
        let mut trial: Vec<Vec<i64>> = chosen.iter().map(|&k| g[k].clone()).collect();
        trial.push(g[i].clone());
        if exact::rank(&IntMatrix::from_rows(r, &trial).expect("consistent")) == trial.len() {
            chosen.push(i);
            if chosen.len() == r {
                break;
            }
        }
    }
    let s: Vec<Vec<i64>> = chosen.iter().map(|&k| g[k].clone()).collect();
    let inv = inverse(&s).expect("chosen rows are independent");
    let mut rays: Vec<Ray> = (0..r)
        .map(|k| {
            let col: Vec<BigRational> = inv.iter().map(|row| row[k].clone()).collect();
            let zeros = chosen.iter().enumerate().filter(|&(j, _)| j != k).fold(0, |z, (_, &c)| z | 1 << c);
            Ray { v: primitive_integer(&col), zeros }
        })
        .collect();
    for (i, row) in g.iter().enumerate() {
        if chosen.contains(&i) {
            continue;
        }
        let values: Vec<i128> = rays
            .iter()
            .map(|ray| ray.v.iter().zip(row).map(|(&a, &b)| a as i128 * b as i128).sum())
            .collect();
        let mut next: Vec<Ray> = Vec::new();
        for (k, ray) in rays.iter().enumerate() {
            match values[k].signum() {
                1 => next.push(ray.clone()),
                0 => next.push(Ray { v: ray.v.clone(), zeros: ray.zeros | 1 << i }),
                _ => {}
            }
        }
        for (p, rp) in rays.iter().enumerate() {
            if values[p] <= 0 {
                continue;
            }
            for (n, rn) in rays.iter().enumerate() {
                if values[n] >= 0 {
                    continue;
                }
                let common = rp.zeros & rn.zeros;
                if (common.count_ones() as usize) + 2 < r {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(q, rq)| q != p && q != n && common & !rq.zeros == 0);
                if blocked {
                    continue;
                }
                let combo: Vec<i64> = rp
                    .v
                    .iter()
                    .zip(&rn.v)
                    .map(|(&a, &b)| {
                        let x = values[p] * b as i128 - values[n] * a as i128;
                        i64::try_from(x).expect("ray entry fits in i64")
                    })
                    .collect();
                next.push(Ray { v: exact::primitive(&combo), zeros: common | 1 << i });
            }
        }
        rays = next;
    }
    let mut out: Vec<Vec<i64>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    out
}

/// The facet description of the cone inside its linear span.
///
/// Facet normals vanish outside a fixed set of coordinates on which the span
/// projects isomorphically, which fixes one representative modulo the
/// equations.
pub fn facets(gens: &ConeGenerators) -> FacetSystem {
    let d = gens.ambient_dim;
    let equations = exact::kernel_lattice(&gens.matrix()).generators().to_vec();
    let pivots = pivot_columns(&gens.generators);
    let projected: Vec<Vec<i64>> = gens.generators.iter().map(|g| pivots.iter().map(|&j| g[j]).collect()).collect();
    let rays = dual_extreme_rays(&projected);
    let mut inequalities: Vec<Vec<i64>> = rays
        .iter()
        .map(|a| {
            let mut f = vec![0; d];
            for (k, &j) in pivots.iter().enumerate() {
                f[j] = a[k];
            }
            f
        })
        .collect();
    inequalities.sort();
    let lineality_dim = if inequalities.is_empty() {
        pivots.len()
    } else {
        pivots.len() - exact::rank(&IntMatrix::from_rows(d, &inequalities).expect("consistent"))
    };
    FacetSystem { inequalities, equations, lineality_dim }
}

/// The Hilbert basis of the cone intersected with the lattice spanned by the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis {
    pub elements: Vec<Vec<i64>>,
}

/// Lattice points of the half-open parallelepiped spanned by the rows of `s`.
fn parallelepiped_points(s: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = s.len();
    let det = exact::determinant(&IntMatrix::from_rows(r, s).expect("square")).expect("square").abs();
    if det <= BigInt::from(1) {
        return Vec::new();
    }
    let det_i = det.to_i64().expect("determinant fits in i64");
    let inv = inverse(s).expect("non-singular");
    // numerators of λ = v·S⁻¹ (mod 1), scaled by det
    let unit: Vec<Vec<i64>> = inv
        .iter()
        .map(|row| {
            row.iter()
                .map(|q| {
                    let scaled = q * BigRational::from_integer(det.clone());
                    scaled.to_integer().to_i64().expect("scaled entry fits").rem_euclid(det_i)
                })
                .collect()
        })
        .collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let zero = vec![0; r];
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(p) = frontier.pop() {
        for u in &unit {
            let q: Vec<i64> = p.iter().zip(u).map(|(a, b)| (a + b) % det_i).collect();
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.into_iter()
        .filter(|l| l.iter().any(|&x| x != 0))
        .map(|l| {
            (0..r)
                .map(|j| {
                    let num: i128 = (0..r).map(|i| l[i] as i128 * s[i][j] as i128).sum();
                    (num / det_i as i128) as i64
                })
                .collect()
        })
        .collect()
}

fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        visit(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { return };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Hilbert basis via the fundamental parallelepipeds of all simplicial
/// subcones, reduced to the irreducible elements.
pub fn hilbert_basis(gens: &ConeGenerators) -> HilbertBasis {
    let d = gens.ambient_dim;
    let lattice = LatticeBasis::spanned_by(d, &gens.generators).expect("lengths checked");
    let r = lattice.rank();
    let coords: Vec<Vec<i64>> =
        gens.generators.iter().map(|g| lattice.coordinates(g).expect("generator lies in its lattice")).collect();
    let local = ConeGenerators::new(r, coords.clone()).expect("non-zero coordinates");
    let cone = facets(&local);
    let mut candidates: BTreeSet<Vec<i64>> = coords.iter().cloned().collect();
    combinations(coords.len(), r, |subset| {
        let s: Vec<Vec<i64>> = subset.iter().map(|&i| coords[i].clone()).collect();
        if exact::rank(&IntMatrix::from_rows(r, &s).expect("square")) < r {
            return;
        }
        candidates.extend(parallelepiped_points(&s));
    });
    let candidates: Vec<Vec<i64>> = candidates.into_iter().collect();
    let irreducible: Vec<&Vec<i64>> = candidates
        .iter()
        .filter(|x| {
            !candidates.iter().any(|y| {
                y != *x && {
                    let diff: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
                    cone.contains(&diff)
                }
            })
        })
        .collect();
    let basis = lattice.generators();
    let mut elements: Vec<Vec<i64>> = irreducible
        .into_iter()
        .map(|c| (0..d).map(|j| c.iter().zip(basis).map(|(&a, b)| a * b[j]).sum()).collect())
        .collect();
    elements.sort();
    HilbertBasis { elements }
}

/// Non-negative coefficients `λ` with `Σ λᵢ·gᵢ = v`, or `None` if `v ∉ ℕ·gens`.
pub fn semigroup_member(gens: &ConeGenerators, v: &[i64]) -> Option<Vec<i64>> {
    if v.len() != gens.ambient_dim {
        return None;
    }
    let a = IntMatrix::from_columns(gens.ambient_dim, &gens.generators).expect("lengths checked");
    dio::find_solution(&DioSystem::nonneg(a, v.to_vec()).expect("rhs length matches"))
}
