//! Holes of the semigroup generated by a design matrix.
//!
//! A hole is a point of the saturated semigroup (cone ∩ lattice) that is not
//! a non-negative integer combination of the columns. Holes that lie in the
//! Hilbert basis are the fundamental ones; every other hole arises from a
//! fundamental hole `h` as `h + B·λ`, and the admissible `λ` are the
//! exponents outside the monomial ideal of [`hole_exponent_ideal`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::cone::{self, ConeGenerators, FacetSystem};
use crate::dio::{self, DioSystem, Sign};
use crate::exact::{self, IntMatrix, LatticeBasis};
use crate::fiber;
use crate::model::DesignMatrix;

/// `Σ coefficients·holes = B·columns`, a certificate that a small combination
/// of fundamental holes lies in the semigroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessIdentity {
    /// coefficient of each fundamental hole, in the order they are reported
    pub hole_coefficients: Vec<i64>,
    /// multiplicity of each column of the design matrix
    pub columns: Vec<i64>,
}

impl WitnessIdentity {
    /// Checks the identity exactly against the design matrix and the holes.
    pub fn verify(&self, design: &IntMatrix, holes: &[Vec<i64>]) -> bool {
        if self.columns.iter().any(|&c| c < 0) || self.hole_coefficients.len() != holes.len() {
            return false;
        }
        let lhs: Vec<i64> = (0..design.rows())
            .map(|r| self.hole_coefficients.iter().zip(holes).map(|(&c, h)| c * h[r]).sum())
            .collect();
        lhs == design.mul_vec(&self.columns)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalHole {
    pub vector: Vec<i64>,
    /// identities for `2·h` and `h + h'` (later holes) that lie in the semigroup
    pub witness_identities: Vec<WitnessIdentity>,
}

/// Membership tests for the cone, the lattice and the semigroup of a design matrix.
pub struct HoleOracle {
    matrix: IntMatrix,
    facets: FacetSystem,
    lattice: LatticeBasis,
}

impl HoleOracle {
    pub fn new(matrix: &IntMatrix) -> Self {
        let gens = ConeGenerators::from_columns(matrix).expect("design matrices have no zero column");
        let facets = cone::facets(&gens);
        let lattice = LatticeBasis::spanned_by(matrix.rows(), &matrix.column_vecs()).expect("consistent lengths");
        Self { matrix: matrix.clone(), facets, lattice }
    }

    pub fn in_cone(&self, v: &[i64]) -> bool {
        self.facets.contains(v)
    }

    pub fn in_lattice(&self, v: &[i64]) -> bool {
        self.lattice.contains(v)
    }

    /// Semigroup membership by searching the fiber of `v` for a single table.
    pub fn in_semigroup(&self, v: &[i64]) -> bool {
        let mut found = false;
        fiber::for_each_table(&self.matrix, v, |_| {
            found = true;
            false
        })
        .expect("margin length matches");
        found
    }

    pub fn is_hole(&self, v: &[i64]) -> bool {
        self.in_cone(v) && self.in_lattice(v) && !self.in_semigroup(v)
    }
}

/// Hilbert basis elements that are not in the semigroup, with certificates for
/// the pairwise sums and doubles that are.
pub fn fundamental_holes(design: &DesignMatrix) -> Vec<FundamentalHole> {
    let b = design.matrix();
    let gens = ConeGenerators::from_columns(b).expect("design matrices have no zero column");
    let mut vectors: Vec<Vec<i64>> = cone::hilbert_basis(&gens)
        .elements
        .into_iter()
        .filter(|v| cone::semigroup_member(&gens, v).is_none())
        .collect();
    vectors.sort_by(|x, y| y.cmp(x));
    let k = vectors.len();
    vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut witness_identities = Vec::new();
            for j in i..k {
                let sum: Vec<i64> = v.iter().zip(&vectors[j]).map(|(a, c)| a + c).collect();
                if let Some(columns) = cone::semigroup_member(&gens, &sum) {
                    let mut hole_coefficients = vec![0; k];
                    hole_coefficients[i] += 1;
                    hole_coefficients[j] += 1;
                    witness_identities.push(WitnessIdentity { hole_coefficients, columns });
                }
            }
            FundamentalHole { vector: v.clone(), witness_identities }
        })
        .collect()
}

/// A monomial ideal given by exponent vectors, kept as its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    generators: Vec<Vec<i64>>,
}

fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl MonomialIdeal {
    pub fn new(nvars: usize, generators: Vec<Vec<i64>>) -> Self {
        assert!(generators.iter().all(|g| g.len() == nvars && g.iter().all(|&e| e >= 0)), "exponent vectors");
        let distinct: BTreeSet<Vec<i64>> = generators.into_iter().collect();
        let all: Vec<Vec<i64>> = distinct.into_iter().collect();
        let generators = all.iter().filter(|g| !all.iter().any(|h| h != *g && divides(h, g))).cloned().collect();
        Self { nvars, generators }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn contains(&self, monomial: &[i64]) -> bool {
        self.generators.iter().any(|g| divides(g, monomial))
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.generators.iter().map(|g| monomial_text(g)).collect();
        write!(f, "({})", terms.join(", "))
    }
}

fn monomial_text(exponents: &[i64]) -> String {
    let factors: Vec<String> = exponents
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

/// The monomials `root · x^a` with `a` supported on `free_vars`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StandardPair {
    pub root: Vec<i64>,
    pub free_vars: Vec<usize>,
}

impl StandardPair {
    pub fn covers(&self, monomial: &[i64]) -> bool {
        monomial.iter().zip(&self.root).enumerate().all(|(i, (&m, &r))| m == r || (m >= r && self.free_vars.contains(&i)))
    }
}

impl fmt::Display for StandardPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self.free_vars.iter().map(|i| format!("x{i}")).collect();
        write!(f, "({}, {{{}}})", monomial_text(&self.root), vars.join(","))
    }
}

/// `(root, free)` has no monomial of the ideal: every generator exceeds the
/// root in some variable that is not free.
fn admissible(ideal: &MonomialIdeal, root: &[i64], free: u64) -> bool {
    ideal.generators.iter().all(|g| (0..root.len()).any(|j| free & (1 << j) == 0 && g[j] > root[j]))
}

/// The standard pairs of a monomial ideal, sorted.
///
/// Roots of standard pairs are bounded by the largest exponent of each
/// variable among the generators, so every candidate root in that box is
/// tried with each maximal admissible set of free variables.
pub fn standard_pairs(ideal: &MonomialIdeal) -> Vec<StandardPair> {
    let n = ideal.nvars;
    assert!(n <= 64, "at most 64 variables");
    let bound: Vec<i64> = (0..n).map(|j| ideal.generators.iter().map(|g| g[j]).max().unwrap_or(0)).collect();
    let mut pairs = Vec::new();
    let mut root = vec![0i64; n];
    loop {
        if !ideal.contains(&root) {
            let zero_vars: Vec<usize> = (0..n).filter(|&j| root[j] == 0).collect();
            let mut maximal = Vec::new();
            maximal_free_sets(ideal, &root, &zero_vars, 0, 0, &mut maximal);
            for free in maximal {
                let dominated = (0..n).any(|j| {
                    root[j] > 0 && free & (1 << j) == 0 && {
                        let mut lower = root.clone();
                        lower[j] = 0;
                        admissible(ideal, &lower, free | (1 << j))
                    }
                });
                if !dominated {
                    let free_vars = (0..n).filter(|&j| free & (1 << j) != 0).collect();
                    pairs.push(StandardPair { root: root.clone(), free_vars });
                }
            }
        }
        // next root in the box ∏ [0, bound_j)
        let Some(j) = (0..n).find(|&j| root[j] + 1 < bound[j]) else { break };
        root[j] += 1;
        for r in root.iter_mut().take(j) {
            *r = 0;
        }
    }
    pairs.sort();
    pairs
}

fn maximal_free_sets(ideal: &MonomialIdeal, root: &[i64], vars: &[usize], k: usize, free: u64, out: &mut Vec<u64>) {
    if k == vars.len() {
        if vars.iter().all(|&j| free & (1 << j) != 0 || !admissible(ideal, root, free | (1 << j))) {
            out.push(free);
        }
        return;
    }
    let with = free | (1 << vars[k]);
    if admissible(ideal, root, with) {
        maximal_free_sets(ideal, root, vars, k + 1, with, out);
    }
    maximal_free_sets(ideal, root, vars, k + 1, free, out);
}

/// Minimal `(λ, μ) ≥ 0` with `hole + B·λ = B·μ`, as rows `λ | μ`.
///
/// Minimal pairs have disjoint supports, so they are the sign parts of the
/// conformally minimal solutions of `B·w = hole` with `w` free.
pub fn hole_solutions(hole: &[i64], design: &IntMatrix) -> Vec<Vec<i64>> {
    let system = DioSystem::new(design.clone(), hole.to_vec(), vec![Sign::Free; design.cols()]).expect("hole length matches");
    let solutions = dio::minimal_inhomogeneous(&system).expect("design matrix is small");
    let mut rows: Vec<Vec<i64>> = solutions
        .inhomogeneous
        .iter()
        .map(|w| w.iter().map(|&x| (-x).max(0)).chain(w.iter().map(|&x| x.max(0))).collect())
        .collect();
    rows.sort();
    rows
}

/// The ideal generated by the `λ`-parts of the minimal solutions of `hole + B·λ = B·μ`.
pub fn hole_exponent_ideal(hole: &FundamentalHole, design: &IntMatrix) -> MonomialIdeal {
    let n = design.cols();
    MonomialIdeal::new(n, hole_solutions(&hole.vector, design).into_iter().map(|row| row[..n].to_vec()).collect())
}

/// The holes `base + B·(root + ℕ·directions)` derived from one standard pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleFamily {
    pub base: FundamentalHole,
    pub root: Vec<i64>,
    pub directions: Vec<usize>,
    /// vanishes on every member of the family
    pub separating_functional: Vec<i64>,
}

impl HoleFamily {
    /// The hole `base + B·root + Σ λ_k · column(directions_k)`.
    pub fn member(&self, design: &IntMatrix, lambda: &[i64]) -> Vec<i64> {
        assert_eq!(lambda.len(), self.directions.len(), "one coefficient per direction");
        let shifted = design.mul_vec(&self.root);
        (0..design.rows())
            .map(|r| {
                self.base.vector[r]
                    + shifted[r]
                    + self.directions.iter().zip(lambda).map(|(&c, &l)| l * design.get(r, c)).sum::<i64>()
            })
            .collect()
    }
}

/// One family per standard pair of each fundamental hole's exponent ideal.
///
/// The separating functional is the indicator of the margin coordinates on
/// which the family's base and all its direction columns vanish.
pub fn hole_families(design: &DesignMatrix) -> Vec<HoleFamily> {
    let b = design.matrix();
    let mut families = Vec::new();
    for hole in fundamental_holes(design) {
        let ideal = hole_exponent_ideal(&hole, b);
        for pair in standard_pairs(&ideal) {
            let base = b.mul_vec(&pair.root);
            let separating_functional = (0..b.rows())
                .map(|r| {
                    let zero = hole.vector[r] + base[r] == 0 && pair.free_vars.iter().all(|&c| b.get(r, c) == 0);
                    i64::from(zero)
                })
                .collect();
            families.push(HoleFamily {
                base: hole.clone(),
                root: pair.root,
                directions: pair.free_vars,
                separating_functional,
            });
        }
    }
    families
}

/// Outcome of the bounded check of the hole separation properties.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeparationReport {
    pub bound: i64,
    pub members_checked: usize,
    pub tables_checked: usize,
    pub failures: Vec<String>,
}

impl SeparationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SeparationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "separation check up to degree {}: {} holes, {} semigroup points, {}",
            self.bound,
            self.members_checked,
            self.tables_checked,
            if self.passed() { "passed" } else { "FAILED" }
        )?;
        for msg in &self.failures {
            writeln!(f, "  {msg}")?;
        }
        Ok(())
    }
}

/// All `λ ∈ ℕ^k` with `|λ|₁ ≤ bound`.
pub fn bounded_exponents(k: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; k];
    fn go(i: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            go(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    go(0, bound, &mut cur, &mut out);
    out
}

/// Brute-force check of the separation properties of hole families up to `|λ|₁ ≤ bound`.
///
/// Projected fibers are taken with respect to the margins of every facet
/// except the first. For each family member `h`:
/// - `h` is a hole (in the cone and the lattice, with an empty fiber);
/// - its own functional vanishes on `h`, and every other family's functional is positive on `h`;
/// - every semigroup point `v = B·t` with the same projected margins has positive functional.
///
/// Also checked: no projected fiber holds two members of one family, and
/// distinct families share no member.
pub fn verify_separation(design: &DesignMatrix, families: &[HoleFamily], bound: i64) -> SeparationReport {
    let b = design.matrix();
    let oracle = HoleOracle::new(b);
    let first = design.facet_rows(0);
    let rest: Vec<usize> = (first.end..b.rows()).collect();
    let projection = IntMatrix::from_rows(b.cols(), &rest.iter().map(|&r| b.row(r).to_vec()).collect::<Vec<_>>())
        .expect("rows of the design matrix");
    let mut report = SeparationReport { bound, ..Default::default() };
    let mut owner: HashMap<Vec<i64>, usize> = HashMap::new();
    for (fi, family) in families.iter().enumerate() {
        let functional = &family.separating_functional;
        let mut by_projection: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for lambda in bounded_exponents(family.directions.len(), bound) {
            let h = family.member(b, &lambda);
            report.members_checked += 1;
            if !oracle.is_hole(&h) {
                report.failures.push(format!("family {fi}: member {lambda:?} is not a hole"));
            }
            if exact::dot(functional, &h) != 0 {
                report.failures.push(format!("family {fi}: functional does not vanish on member {lambda:?}"));
            }
            for (gi, other) in families.iter().enumerate() {
                if gi != fi && exact::dot(&other.separating_functional, &h) <= 0 {
                    report.failures.push(format!("family {fi}: functional of family {gi} is not positive on member {lambda:?}"));
                }
            }
            if let Some(prev) = owner.insert(h.clone(), fi) {
                if prev != fi {
                    report.failures.push(format!("families {prev} and {fi} share the hole {h:?}"));
                }
            }
            let key: Vec<i64> = rest.iter().map(|&r| h[r]).collect();
            *by_projection.entry(key.clone()).or_default() += 1;
            fiber::for_each_table(&projection, &key, |t| {
                report.tables_checked += 1;
                let v = b.mul_vec(t);
                if exact::dot(functional, &v) <= 0 {
                    report.failures.push(format!("family {fi}: functional is not positive on {v:?}"));
                }
                true
            })
            .expect("margin length matches");
        }
        for (key, count) in by_projection {
            if count > 1 {
                report.failures.push(format!("family {fi}: {count} members share projected margins {key:?}"));
            }
        }
    }
    report
}
