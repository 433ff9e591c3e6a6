//! Markov bases of `K_{3,N}` as the toric fiber product of `N` three-stars
//! glued along the triangle margin of the nodes `1, 2, 3`.
//!
//! States of `K_{3,N}` are indexed by `t + 8·(x₄ + 2x₅ + …)` where `t` is the
//! triangle state `x₁ + 2x₂ + 4x₃`. A three-star state is `t + 8·x₄`.
//!
//! The pipeline: the projected fibers (triangle margins of the fibers of one
//! factor) are cut out by an inequality system whose lattice Markov basis
//! gives moves `g ∈ ℤ⁸`. Each `g` lifts to factor moves, one lift per factor
//! is glued into a move of the product, and the glues together with the
//! quadratic swaps of the leaf coordinates generate the kernel.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::cone::{self, ConeGenerators};
use crate::dio::{self, DioSystem, Sign};
use crate::exact::{self, IntMatrix, LatticeBasis};
use crate::fiber;
use crate::holes::HoleFamily;
use crate::markov;
use crate::model::DesignMatrix;
use crate::moves::{Move, MoveSet};
use crate::notation::{self, SymmetryGroup};

pub const TRIANGLE_STATES: usize = 8;
pub const FACTOR_STATES: usize = 16;

/// Tensor positions of the independent triangle coordinates `y000, y001, y010, y100`.
pub const REDUCED_COORDINATES: [usize; 4] = [0, 4, 2, 1];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TfpError {
    #[error("move has length {got}, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("move is not the triangle projection of any factor move")]
    NotLiftable,
    #[error("at least one factor is required")]
    NoFactors,
    #[error("lifts of different projected moves cannot be glued")]
    MixedProjections,
    #[error("components have different excess rows and admit no consistent pairing")]
    IncompatibleExcess,
    #[error("padding entry {0} is not a three-star state")]
    BadPadding(usize),
}

/// `min(4 + 2N, 12)`, the largest degree a minimal Markov basis of `K_{3,N}` can need.
pub fn degree_bound(n: usize) -> i64 {
    (4 + 2 * n as i64).min(12)
}

/// The models involved in the product of `n` three-stars.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TfpStructure {
    n: usize,
}

impl TfpStructure {
    pub fn new(n: usize) -> Result<Self, TfpError> {
        if n == 0 {
            return Err(TfpError::NoFactors);
        }
        Ok(Self { n })
    }

    pub fn factors(&self) -> usize {
        self.n
    }

    pub fn factor(&self) -> DesignMatrix {
        DesignMatrix::three_star()
    }

    pub fn codim_zero(&self) -> DesignMatrix {
        DesignMatrix::k4_tilde()
    }

    pub fn product(&self) -> DesignMatrix {
        DesignMatrix::k3n(self.n)
    }

    pub fn state_count(&self) -> usize {
        TRIANGLE_STATES << self.n
    }

    /// Index of the product state with triangle state `t` and leaf values `leaves`.
    pub fn state(&self, t: usize, leaves: &[usize]) -> usize {
        t + TRIANGLE_STATES * leaves.iter().enumerate().map(|(k, &x)| x << k).sum::<usize>()
    }
}

/// Triangle margin of a three-star vector.
pub fn factor_projection(v: &[i64]) -> Vec<i64> {
    (0..TRIANGLE_STATES).map(|t| v[t] + v[t + TRIANGLE_STATES]).collect()
}

/// Triangle margin of a vector on the states of `K_{3,N}`.
pub fn product_projection(v: &[i64]) -> Vec<i64> {
    let mut y = vec![0; TRIANGLE_STATES];
    for (i, &x) in v.iter().enumerate() {
        y[i % TRIANGLE_STATES] += x;
    }
    y
}

/// The counts `y^i_0` of observations with `xᵢ = 0`, together with the sample size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarginSummary {
    pub total: i64,
    pub zeros: [i64; 3],
}

impl MarginSummary {
    pub fn of_triangle(y: &[i64]) -> Self {
        let mut zeros = [0; 3];
        for (t, &v) in y.iter().enumerate() {
            for (i, z) in zeros.iter_mut().enumerate() {
                if (t >> i) & 1 == 0 {
                    *z += v;
                }
            }
        }
        Self { total: y.iter().sum(), zeros }
    }

    /// Reads the summary off a three-star margin vector.
    pub fn of_star_margin(star: &DesignMatrix, margin: &[i64]) -> Self {
        let mut zeros = [0; 3];
        for (i, z) in zeros.iter_mut().enumerate() {
            // facet i is {i, leaf}; facet states 0 and 2 have xᵢ = 0
            *z = margin[star.row_of(i, 0).expect("facet row")] + margin[star.row_of(i, 2).expect("facet row")];
        }
        let total = star.facet_rows(0).map(|r| margin[r]).sum();
        Self { total, zeros }
    }
}

/// Linear part of the relations expressing the triangle margin through the
/// reduced coordinates: an `8×4` matrix whose rows at [`REDUCED_COORDINATES`]
/// form the unit matrix.
pub fn relation_matrix() -> IntMatrix {
    let rows: Vec<Vec<i64>> = vec![
        vec![1, 0, 0, 0],   // y000
        vec![0, 0, 0, 1],   // y100
        vec![0, 0, 1, 0],   // y010
        vec![-1, 0, -1, -1], // y110
        vec![0, 1, 0, 0],   // y001
        vec![-1, -1, 0, -1], // y101
        vec![-1, -1, -1, 0], // y011
        vec![2, 1, 1, 1],   // y111
    ];
    IntMatrix::from_rows(4, &rows).expect("fixed shape")
}

/// The triangle margin with reduced coordinates `u` and the given summary.
pub fn expand_reduced(u: &[i64], summary: &MarginSummary) -> Vec<i64> {
    let [z1, z2, z3] = summary.zeros;
    let (y000, y001, y010, y100) = (u[0], u[1], u[2], u[3]);
    let mut y = vec![0; TRIANGLE_STATES];
    y[0] = y000;
    y[4] = y001;
    y[2] = y010;
    y[1] = y100;
    y[6] = z1 - y000 - y001 - y010;
    y[5] = z2 - y000 - y001 - y100;
    y[3] = z3 - y000 - y010 - y100;
    y[7] = summary.total - z1 - z2 - z3 + 2 * y000 + y001 + y010 + y100;
    y
}

pub fn reduce(y: &[i64]) -> Vec<i64> {
    REDUCED_COORDINATES.iter().map(|&t| y[t]).collect()
}

/// Inequalities `D′u ≥ c′` describing the projected fibers in reduced coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedFiberSystem {
    /// linear parts of the facets of the codimension-zero model, unit rows first
    pub d: IntMatrix,
    /// the rows of `d` followed by the separating functionals of the hole families
    pub augmented: IntMatrix,
    /// per row of `d`: the facet inequalities (margin space) with that linear part
    facet_rows: Vec<Vec<Vec<i64>>>,
}

impl ProjectedFiberSystem {
    pub fn relations(&self) -> IntMatrix {
        relation_matrix()
    }

    /// Right-hand sides of `d` implied by the facets of the marginal cone for a
    /// three-star margin.
    pub fn facet_rhs(&self, star_margin: &[i64]) -> Vec<i64> {
        let summary = MarginSummary::of_star_margin(&DesignMatrix::three_star(), star_margin);
        let offset = expand_reduced(&[0; 4], &summary);
        let mut full = offset.clone();
        full.extend_from_slice(star_margin);
        self.facet_rows
            .iter()
            .map(|facets| {
                facets
                    .iter()
                    .map(|a| {
                        // a·(R u + offset, s) ≥ 0 with a·R u = k·(row·u) for the primitive row
                        let scale = scale_of(a, &self.d, self.d_row_index(a));
                        let c = -exact::dot(a, &full);
                        div_ceil(c, scale)
                    })
                    .max()
                    .expect("every row comes from a facet")
            })
            .collect()
    }

    fn d_row_index(&self, facet: &[i64]) -> usize {
        let lin = triangle_linear_part(facet);
        let prim = exact::primitive(&lin);
        (0..self.d.rows()).find(|&r| self.d.row(r) == prim.as_slice()).expect("row of d")
    }

    /// The reduced coordinates of every point of the projected fiber of a
    /// three-star margin, sorted.
    pub fn projected_fiber(&self, star_margin: &[i64]) -> Vec<Vec<i64>> {
        let star = DesignMatrix::three_star();
        let mut points = std::collections::BTreeSet::new();
        fiber::for_each_table(star.matrix(), star_margin, |t| {
            points.insert(reduce(&factor_projection(t)));
            true
        })
        .expect("margin length matches");
        points.into_iter().collect()
    }

    /// The tightest right-hand side `c′` for which `D′u ≥ c′` holds on the
    /// whole projected fiber, or `None` for an empty fiber.
    pub fn rhs(&self, star_margin: &[i64]) -> Option<Vec<i64>> {
        let points = self.projected_fiber(star_margin);
        if points.is_empty() {
            return None;
        }
        Some(
            (0..self.augmented.rows())
                .map(|r| points.iter().map(|u| exact::dot(self.augmented.row(r), u)).min().expect("non-empty"))
                .collect(),
        )
    }

    /// Integer points of `{u : D′u ≥ c}` with every coordinate at most `bound`.
    pub fn lattice_points(&self, c: &[i64], bound: i64) -> Vec<Vec<i64>> {
        let lower: Vec<i64> = (0..4).map(|i| c[i]).collect();
        let mut out = Vec::new();
        let mut u = lower.clone();
        if lower.iter().any(|&l| l > bound) {
            return out;
        }
        loop {
            if (0..self.augmented.rows()).all(|r| exact::dot(self.augmented.row(r), &u) >= c[r]) {
                out.push(u.clone());
            }
            let Some(i) = (0..4).rev().find(|&i| u[i] < bound) else { break };
            u[i] += 1;
            u[i + 1..].copy_from_slice(&lower[i + 1..]);
        }
        out
    }
}

fn triangle_linear_part(facet: &[i64]) -> Vec<i64> {
    let r = relation_matrix();
    (0..4).map(|j| (0..TRIANGLE_STATES).map(|t| facet[t] * r.get(t, j)).sum()).collect()
}

fn scale_of(facet: &[i64], d: &IntMatrix, row: usize) -> i64 {
    let lin = triangle_linear_part(facet);
    let j = (0..4).find(|&j| d.get(row, j) != 0).expect("non-zero row");
    lin[j] / d.get(row, j)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    let q = a.div_euclid(b);
    if q * b == a {
        q
    } else {
        q + 1
    }
}

/// The inequality system of the projected fibers.
///
/// `d` holds the distinct linear parts of the facets of the marginal cone of
/// the codimension-zero model in reduced coordinates; the hole families
/// contribute one extra row each.
pub fn projected_fiber_system(families: &[HoleFamily]) -> ProjectedFiberSystem {
    let k4 = DesignMatrix::k4_tilde();
    let gens = ConeGenerators::from_columns(k4.matrix()).expect("no zero column");
    let facets = cone::facets(&gens);
    let mut by_row: BTreeMap<Vec<i64>, Vec<Vec<i64>>> = BTreeMap::new();
    for a in &facets.inequalities {
        let lin = triangle_linear_part(a);
        if lin.iter().all(|&x| x == 0) {
            continue;
        }
        by_row.entry(exact::primitive(&lin)).or_default().push(a.clone());
    }
    let mut rows: Vec<(Vec<i64>, Vec<Vec<i64>>)> = by_row.into_iter().collect();
    let unit_rank = |r: &Vec<i64>| -> usize {
        if r.iter().filter(|&&x| x != 0).count() == 1 && r.iter().sum::<i64>() == 1 {
            r.iter().position(|&x| x == 1).expect("unit")
        } else {
            4
        }
    };
    rows.sort_by(|(a, _), (b, _)| {
        unit_rank(a)
            .cmp(&unit_rank(b))
            .then_with(|| a.iter().filter(|&&x| x != 0).count().cmp(&b.iter().filter(|&&x| x != 0).count()))
            .then_with(|| b.cmp(a))
    });
    let d_rows: Vec<Vec<i64>> = rows.iter().map(|(r, _)| r.clone()).collect();
    let facet_rows = rows.into_iter().map(|(_, f)| f).collect();
    let mut aug_rows = d_rows.clone();
    for family in families {
        aug_rows.push(triangle_linear_part(&family.separating_functional));
    }
    ProjectedFiberSystem {
        d: IntMatrix::from_rows(4, &d_rows).expect("four columns"),
        augmented: IntMatrix::from_rows(4, &aug_rows).expect("four columns"),
        facet_rows,
    }
}

/// The moves connecting all projected fibers, as triangle moves in `ℤ⁸`.
///
/// A Markov basis of the lattice spanned by the columns of `D′` moves between
/// the solutions of `D′u ≥ c′`; its unit block gives the change of `u`.
pub fn pf_markov_basis(system: &ProjectedFiberSystem) -> MoveSet {
    let aug = &system.augmented;
    let lattice = LatticeBasis::spanned_by(aug.rows(), &aug.column_vecs()).expect("consistent lengths");
    let r = relation_matrix();
    MoveSet::from_vectors(markov::lattice_markov_basis(&lattice).iter().map(|z| r.mul_vec(&z.entries()[..4])))
}

/// A three-star move with zero star margins projecting to a triangle move.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lift {
    pub pf_move: Move,
    pub vector: Move,
}

impl Lift {
    /// Checks both defining equations exactly.
    pub fn is_valid(&self) -> bool {
        let star = DesignMatrix::three_star();
        star.matrix().mul_vec(self.vector.entries()).iter().all(|&x| x == 0)
            && factor_projection(self.vector.entries()) == self.pf_move.entries()
    }

    /// `ξ(m⁺) − g⁺`: the triangle rows of the lift that cancel in the projection.
    pub fn excess(&self) -> Vec<i64> {
        let up = factor_projection(&self.vector.positive_part());
        up.iter().zip(self.pf_move.positive_part()).map(|(a, b)| a - b).collect()
    }
}

/// The lifts of a triangle move.
///
/// The conformally minimal solutions of `B·m = (g, 0)` over the
/// codimension-zero design matrix are grouped by the margin `B·m⁻` they start
/// from. Starting margins that exceed another one by an element of the
/// semigroup are dropped; each remaining margin keeps its lexicographically
/// smallest move.
pub fn lifts(g: &Move) -> Result<Vec<Lift>, TfpError> {
    if g.len() != TRIANGLE_STATES {
        return Err(TfpError::Length { expected: TRIANGLE_STATES, got: g.len() });
    }
    let k4 = DesignMatrix::k4_tilde();
    let b = k4.matrix();
    let mut rhs = g.entries().to_vec();
    rhs.resize(b.rows(), 0);
    let system = DioSystem::new(b.clone(), rhs, vec![Sign::Free; b.cols()]).expect("rhs length matches");
    let solutions = dio::minimal_inhomogeneous(&system).expect("sixteen variables").inhomogeneous;
    if solutions.is_empty() {
        return Err(TfpError::NotLiftable);
    }
    let mut by_start: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
    for w in solutions {
        let start = b.mul_vec(&Move::new(w.clone()).negative_part());
        let slot = by_start.entry(start).or_insert_with(|| w.clone());
        if w < *slot {
            *slot = w;
        }
    }
    let starts: Vec<&Vec<i64>> = by_start.keys().collect();
    let in_semigroup = |v: &[i64]| {
        if v.iter().any(|&x| x < 0) {
            return false;
        }
        let mut found = false;
        fiber::for_each_table(b, v, |_| {
            found = true;
            false
        })
        .expect("margin length matches");
        found
    };
    let mut out: Vec<Lift> = by_start
        .iter()
        .filter(|(s, _)| {
            !starts.iter().any(|o| {
                *o != *s && {
                    let diff: Vec<i64> = s.iter().zip(o.iter()).map(|(a, c)| a - c).collect();
                    in_semigroup(&diff)
                }
            })
        })
        .map(|(_, w)| Lift { pf_move: g.clone(), vector: Move::new(w.clone()) })
        .collect();
    out.sort_by(|a, b| a.vector.degree().cmp(&b.vector.degree()).then_with(|| a.vector.cmp(&b.vector)));
    Ok(out)
}

/// Componentwise maximum of the excess over a set of lifts.
pub fn excess_bound(lifts: &[Lift]) -> Vec<i64> {
    let mut e = vec![0; TRIANGLE_STATES];
    for l in lifts {
        for (x, y) in e.iter_mut().zip(l.excess()) {
            *x = (*x).max(y);
        }
    }
    e
}

/// A move of `K_{3,N}` glued from one lift per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluedMove {
    pub components: Vec<Lift>,
    /// three-star states added to both sides of each component before pairing
    pub padding: Vec<Vec<usize>>,
    pub vector: Move,
}

impl GluedMove {
    pub fn pf_move(&self) -> &Move {
        &self.components[0].pf_move
    }
}

/// `ξ(m̃⁺) − g⁺` for a glued move.
pub fn xi_excess(m: &GluedMove) -> Vec<i64> {
    let up = product_projection(&m.vector.positive_part());
    up.iter().zip(m.pf_move().positive_part()).map(|(a, b)| a - b).collect()
}

/// Glues lifts that share their projected move and their excess.
pub fn glue(lifts: &[Lift]) -> Result<GluedMove, TfpError> {
    glue_padded(lifts, &vec![Vec::new(); lifts.len()])
}

/// Glues lifts after adding the padding states of each component to both of
/// its sides. The padded components must agree on their triangle rows.
///
/// Rows of all components with the same triangle state are paired in
/// increasing order of the leaf value.
pub fn glue_padded(lifts: &[Lift], padding: &[Vec<usize>]) -> Result<GluedMove, TfpError> {
    let Some(first) = lifts.first() else { return Err(TfpError::NoFactors) };
    if lifts.iter().any(|l| l.pf_move != first.pf_move) {
        return Err(TfpError::MixedProjections);
    }
    assert_eq!(padding.len(), lifts.len(), "one padding list per component");
    if let Some(&bad) = padding.iter().flatten().find(|&&s| s >= FACTOR_STATES) {
        return Err(TfpError::BadPadding(bad));
    }
    let structure = TfpStructure::new(lifts.len())?;
    // rows[k][t] = sorted leaf values of component k with triangle state t
    let side = |sign: i64| -> Vec<Vec<Vec<usize>>> {
        lifts
            .iter()
            .zip(padding)
            .map(|(l, pad)| {
                let mut rows = vec![Vec::new(); TRIANGLE_STATES];
                for (s, &x) in l.vector.entries().iter().enumerate() {
                    if x * sign > 0 {
                        for _ in 0..x.abs() {
                            rows[s % TRIANGLE_STATES].push(s / TRIANGLE_STATES);
                        }
                    }
                }
                for &s in pad {
                    rows[s % TRIANGLE_STATES].push(s / TRIANGLE_STATES);
                }
                rows.iter_mut().for_each(|r| r.sort_unstable());
                rows
            })
            .collect()
    };
    let mut v = vec![0i64; structure.state_count()];
    for (sign, rows) in [(1, side(1)), (-1, side(-1))] {
        for t in 0..TRIANGLE_STATES {
            let count = rows[0][t].len();
            if rows.iter().any(|r| r[t].len() != count) {
                return Err(TfpError::IncompatibleExcess);
            }
            for i in 0..count {
                let leaves: Vec<usize> = rows.iter().map(|r| r[t][i]).collect();
                v[structure.state(t, &leaves)] += sign;
            }
        }
    }
    Ok(GluedMove { components: lifts.to_vec(), padding: padding.to_vec(), vector: Move::new(v) })
}

/// Degree `|g⁺| + |E|` of the glues of a tuple of lifts, where `E` is the
/// componentwise maximum of their excesses.
pub fn glue_degree(lifts: &[&Lift]) -> i64 {
    let g_plus: i64 = lifts[0].pf_move.positive_part().iter().sum();
    let mut e = [0; TRIANGLE_STATES];
    for l in lifts {
        for (x, y) in e.iter_mut().zip(l.excess()) {
            *x = (*x).max(y);
        }
    }
    g_plus + e.iter().sum::<i64>()
}

/// Every glue of `n` lifts from `lifts` (ordered, with repetition) of degree
/// at most `max_degree`.
///
/// Each component is padded up to the common excess `E` with rows of every
/// possible leaf value, identical on both sides.
pub fn glues(lifts: &[Lift], n: usize, max_degree: i64) -> Vec<GluedMove> {
    let mut out = Vec::new();
    if lifts.is_empty() || n == 0 {
        return out;
    }
    let excesses: Vec<Vec<i64>> = lifts.iter().map(Lift::excess).collect();
    let mut tuple = vec![0usize; n];
    loop {
        let chosen: Vec<&Lift> = tuple.iter().map(|&i| &lifts[i]).collect();
        if glue_degree(&chosen) <= max_degree {
            let mut e = vec![0; TRIANGLE_STATES];
            for &i in &tuple {
                for (x, y) in e.iter_mut().zip(&excesses[i]) {
                    *x = (*x).max(*y);
                }
            }
            // per component and triangle state: the number of padding rows
            let needs: Vec<(usize, usize, usize)> = tuple
                .iter()
                .enumerate()
                .flat_map(|(k, &i)| {
                    let e = &e;
                    let ex = &excesses[i];
                    (0..TRIANGLE_STATES).filter_map(move |t| {
                        let c = (e[t] - ex[t]) as usize;
                        (c > 0).then_some((k, t, c))
                    })
                })
                .collect();
            let components: Vec<Lift> = chosen.iter().map(|l| (*l).clone()).collect();
            let mut ones = vec![0usize; needs.len()];
            loop {
                let mut padding = vec![Vec::new(); n];
                for (&(k, t, c), &j) in needs.iter().zip(&ones) {
                    for r in 0..c {
                        let leaf = usize::from(r < j);
                        padding[k].push(t + TRIANGLE_STATES * leaf);
                    }
                }
                out.push(glue_padded(&components, &padding).expect("padding equalizes the excess"));
                let Some(p) = (0..needs.len()).find(|&p| ones[p] < needs[p].2) else { break };
                ones[p] += 1;
                for o in ones.iter_mut().take(p) {
                    *o = 0;
                }
            }
        }
        let Some(p) = (0..n).find(|&p| tuple[p] + 1 < lifts.len()) else { break };
        tuple[p] += 1;
        for x in tuple.iter_mut().take(p) {
            *x = 0;
        }
    }
    out
}

/// Largest degree among all glues of `n` lifts from `lifts`, without a cap.
///
/// Glue degrees do not depend on the order of the components, so only
/// multisets of lifts are visited.
pub fn max_glue_degree(lifts: &[Lift], n: usize) -> i64 {
    let mut best = 0;
    let mut tuple = vec![0usize; n];
    if lifts.is_empty() || n == 0 {
        return 0;
    }
    loop {
        let chosen: Vec<&Lift> = tuple.iter().map(|&i| &lifts[i]).collect();
        best = best.max(glue_degree(&chosen));
        let Some(p) = (0..n).rev().find(|&p| tuple[p] + 1 < lifts.len()) else { break };
        tuple[p] += 1;
        let v = tuple[p];
        for x in tuple.iter_mut().skip(p + 1) {
            *x = v;
        }
    }
    best
}

/// The quadratic moves `[tDE; tD′E′] − [tDE′; tD′E]` that exchange the values
/// of a proper subset of the leaves between two rows with the same triangle state.
pub fn quadratic_swaps(n: usize) -> MoveSet {
    let structure = TfpStructure::new(n).expect("n ≥ 1");
    let mut moves = Vec::new();
    let leaf_states = 1usize << n;
    for subset in 1..leaf_states - 1 {
        for t in 0..TRIANGLE_STATES {
            for x in 0..leaf_states {
                for y in 0..leaf_states {
                    // x = (D, E), y = (D′, E′); the swap exchanges the subset part
                    let x_swapped = (x & !subset) | (y & subset);
                    let y_swapped = (y & !subset) | (x & subset);
                    if x & subset == y & subset || x & !subset == y & !subset {
                        continue;
                    }
                    let mut v = vec![0i64; structure.state_count()];
                    let at = |s: usize| t + TRIANGLE_STATES * s;
                    v[at(x)] += 1;
                    v[at(y)] += 1;
                    v[at(x_swapped)] -= 1;
                    v[at(y_swapped)] -= 1;
                    moves.push(Move::new(v));
                }
            }
        }
    }
    MoveSet::from_moves(moves)
}

/// Moves of the codimension-zero kernel placed on one factor, with every
/// other leaf held at a constant value.
pub fn constant_column_lifts(n: usize, kernel: &MoveSet) -> MoveSet {
    let structure = TfpStructure::new(n).expect("n ≥ 1");
    let mut moves = Vec::new();
    for m in kernel {
        for k in 0..n {
            for rest in 0..1usize << (n - 1) {
                let mut v = vec![0i64; structure.state_count()];
                for (s, &x) in m.entries().iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    let (t, leaf) = (s % TRIANGLE_STATES, s / TRIANGLE_STATES);
                    let low = rest & ((1 << k) - 1);
                    let high = (rest >> k) << (k + 1);
                    v[t + TRIANGLE_STATES * (low | (leaf << k) | high)] += x;
                }
                moves.push(Move::new(v));
            }
        }
    }
    MoveSet::from_moves(moves)
}

/// Lifts of kernel moves in which each pair of rows with matching triangle
/// state gets its own choice of the remaining leaf coordinates.
///
/// Rows of `m⁺` and `m⁻` are paired in sorted order; the constant-column
/// lifts are the special case of a single choice for all pairs.
pub fn row_lifts(n: usize, kernel: &MoveSet) -> MoveSet {
    let structure = TfpStructure::new(n).expect("n ≥ 1");
    let others = 1usize << (n - 1);
    let mut moves = Vec::new();
    for m in kernel {
        let rows = |part: Vec<i64>| -> Vec<usize> {
            let mut rows: Vec<usize> = part
                .iter()
                .enumerate()
                .flat_map(|(s, &c)| std::iter::repeat_n(s, c as usize))
                .collect();
            rows.sort_by_key(|&s| (s % TRIANGLE_STATES, s / TRIANGLE_STATES));
            rows
        };
        let (plus, minus) = (rows(m.positive_part()), rows(m.negative_part()));
        let d = plus.len();
        for k in 0..n {
            let place = |s: usize, rest: usize| {
                let (t, leaf) = (s % TRIANGLE_STATES, s / TRIANGLE_STATES);
                let low = rest & ((1 << k) - 1);
                let high = (rest >> k) << (k + 1);
                t + TRIANGLE_STATES * (low | (leaf << k) | high)
            };
            let mut choice = vec![0usize; d];
            loop {
                let mut v = vec![0i64; structure.state_count()];
                for i in 0..d {
                    v[place(plus[i], choice[i])] += 1;
                    v[place(minus[i], choice[i])] -= 1;
                }
                if v.iter().any(|&x| x != 0) {
                    moves.push(Move::new(v));
                }
                let Some(i) = (0..d).find(|&i| choice[i] + 1 < others) else { break };
                choice[i] += 1;
                for c in choice.iter_mut().take(i) {
                    *c = 0;
                }
            }
        }
    }
    MoveSet::from_moves(moves)
}

/// Lifts of each move of the projected-fiber Markov basis.
pub fn all_lifts(pf_basis: &MoveSet) -> Vec<(Move, Vec<Lift>)> {
    pf_basis.iter().map(|g| (g.clone(), lifts(g).expect("basis moves are projections"))).collect()
}

/// Quadratic swaps, every glue of degree at most `max_degree` and the row
/// lifts of `kernel`, in the order used by [`assemble_markov_basis`]: by
/// degree, then swaps, glues and row lifts.
pub fn generating_moves(n: usize, lifts: &[(Move, Vec<Lift>)], kernel: &MoveSet, max_degree: i64) -> Vec<Move> {
    let swaps = quadratic_swaps(n);
    let glued = MoveSet::from_moves(lifts.iter().flat_map(|(_, ls)| glues(ls, n, max_degree)).map(|m| m.vector));
    let lifted = row_lifts(n, kernel);
    let mut seen: HashSet<&Move> = HashSet::new();
    let mut moves: Vec<(i64, usize, &Move)> = Vec::new();
    for (tag, set) in [&swaps, &glued, &lifted].into_iter().enumerate() {
        for m in set.iter().filter(|m| m.degree() <= max_degree) {
            if seen.insert(m) {
                moves.push((m.degree(), tag, m));
            }
        }
    }
    moves.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)).then_with(|| a.2.cmp(b.2)));
    moves.into_iter().map(|(_, _, m)| m.clone()).collect()
}

/// A minimal Markov basis of `K_{3,N}` from the quadratic swaps, the glues of
/// lifts of the projected-fiber basis up to [`degree_bound`] and the row
/// lifts of the kernel basis of the codimension-zero product.
pub fn assemble_markov_basis(n: usize, lifts: &[(Move, Vec<Lift>)], kernel: &MoveSet) -> MoveSet {
    assemble_up_to(n, lifts, kernel, degree_bound(n))
}

/// Like [`assemble_markov_basis`] with generators of degree at most
/// `max_degree` only. The result connects every fiber of tables of size at
/// most `max_degree`.
pub fn assemble_up_to(n: usize, lifts: &[(Move, Vec<Lift>)], kernel: &MoveSet, max_degree: i64) -> MoveSet {
    let generators = generating_moves(n, lifts, kernel, max_degree);
    let symmetric = minimize_up_to_symmetry(&generators, &SymmetryGroup::k3n(n));
    markov::minimize_in_order(symmetric.moves())
}

/// One pass over degree-sorted moves that keeps whole orbits under `group`.
///
/// A move whose endpoints are already connected by the kept moves is
/// dropped with its orbit; otherwise its whole orbit is kept. The kept set is
/// always closed under the group, so a connected representative means every
/// image is connected as well. The result is a Markov basis for whatever the
/// input generates, minimal up to orbits.
pub fn minimize_up_to_symmetry(moves: &[Move], group: &SymmetryGroup) -> MoveSet {
    let mut seen: HashSet<Move> = HashSet::new();
    let mut kept: Vec<Move> = Vec::new();
    for m in moves {
        let m = m.canonical();
        if seen.contains(&m) {
            continue;
        }
        let images = notation::orbit(&m, group);
        seen.extend(images.iter().cloned());
        let refs: Vec<&Move> = kept.iter().collect();
        if markov::connected(&refs, &m.positive_part(), &m.negative_part(), usize::MAX) != Some(true) {
            kept.extend(images.iter().cloned());
        }
    }
    MoveSet::from_moves(kept)
}

/// Per projected move: the excess bound over its lifts and the resulting degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBoundReport {
    /// `(g, componentwise excess bound, |g⁺| + |excess bound|)`
    pub per_move: Vec<(Move, Vec<i64>, i64)>,
    /// largest `|excess|` of a single lift
    pub lifting_defect: i64,
}

impl DegreeBoundReport {
    pub fn new(lifts: &[(Move, Vec<Lift>)]) -> Self {
        let per_move = lifts
            .iter()
            .map(|(g, ls)| {
                let e = excess_bound(ls);
                let deg = g.positive_part().iter().sum::<i64>() + e.iter().sum::<i64>();
                (g.clone(), e, deg)
            })
            .collect();
        let lifting_defect =
            lifts.iter().flat_map(|(_, ls)| ls.iter().map(|l| l.excess().iter().sum::<i64>())).max().unwrap_or(0);
        Self { per_move, lifting_defect }
    }

    /// Largest degree of a glue of `n` lifts of some projected move: the
    /// common excess of `n` lifts is at most `n` times the lifting defect and
    /// at most the excess bound.
    pub fn glue_degree(&self, n: usize) -> i64 {
        self.per_move
            .iter()
            .map(|(g, e, _)| g.positive_part().iter().sum::<i64>() + (n as i64 * self.lifting_defect).min(e.iter().sum()))
            .max()
            .unwrap_or(0)
    }

    pub fn global_bound(&self, n: usize) -> i64 {
        degree_bound(n)
    }
}

/// A walk from `m⁺` to `m⁻` using only the given moves, or `None` when the
/// moves do not connect them.
///
/// Breadth-first, so the walk is as short as possible; ties follow the order of `moves`.
pub fn reduce_by_quadratics(m: &Move, quadratics: &MoveSet) -> Option<Vec<Vec<i64>>> {
    let start = m.positive_part();
    let goal = m.negative_part();
    let mut parent: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(start.clone(), start.clone());
    queue.push_back(start.clone());
    while let Some(p) = queue.pop_front() {
        if p == goal {
            let mut path = vec![p.clone()];
            let mut cur = p;
            while cur != start {
                cur = parent[&cur].clone();
                path.push(cur.clone());
            }
            path.reverse();
            return Some(path);
        }
        for q in quadratics {
            for sign in [1, -1] {
                let next: Vec<i64> = p.iter().zip(q.entries()).map(|(&a, &d)| a + sign * d).collect();
                if next.iter().any(|&x| x < 0) || parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next.clone(), p.clone());
                queue.push_back(next);
            }
        }
    }
    None
}
