//! Markov bases of integer lattices.
//!
//! [`lattice_markov_basis`] runs project-and-lift. The lattice is first
//! projected onto the pivot coordinates of its Hermite normal form, where a
//! basis plus one positive vector already connects every fiber. Coordinates
//! are then added back one at a time. A coordinate that is unbounded on the
//! current fibers only needs one extra lattice vector; a bounded one needs a
//! Gröbner basis for an order that never lowers that coordinate.

use std::cmp::Ordering;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::exact::{IntMatrix, LatticeBasis};
use crate::lp;
use crate::model::DesignMatrix;
pub use crate::moves::{Move, MoveSet};

type Mask = u128;

fn support(v: &[i64], active: Mask) -> (Mask, Mask) {
    let mut pos = 0;
    let mut neg = 0;
    for (i, &x) in v.iter().enumerate() {
        if active >> i & 1 == 0 {
            continue;
        }
        if x > 0 {
            pos |= 1 << i;
        } else if x < 0 {
            neg |= 1 << i;
        }
    }
    (pos, neg)
}

/// A term order on the monomials in the active coordinates: optionally
/// "lower `eliminate` coordinate is larger", then degree, then reverse
/// lexicographic.
struct TermOrder {
    active: Mask,
    eliminate: Option<usize>,
}

impl TermOrder {
    /// Compares `v⁺` with `v⁻`.
    fn compare(&self, v: &[i64]) -> Ordering {
        if let Some(i) = self.eliminate {
            match v[i].cmp(&0) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {}
            }
        }
        let deg: i64 = v.iter().enumerate().filter(|(j, _)| self.active >> j & 1 == 1).map(|(_, x)| x).sum();
        match deg.cmp(&0) {
            Ordering::Equal => {}
            other => return other,
        }
        for j in (0..v.len()).rev() {
            if self.active >> j & 1 == 1 && v[j] != 0 {
                return if v[j] < 0 { Ordering::Greater } else { Ordering::Less };
            }
        }
        Ordering::Equal
    }
}

#[derive(Clone, Debug)]
struct Binomial {
    v: Vec<i64>,
    lead: Mask,
    tail: Mask,
    lead_entries: Vec<(usize, i64)>,
}

impl Binomial {
    /// Orients `v` so that `v⁺` is the leading side; `None` for vectors vanishing on the active coordinates.
    fn oriented(mut v: Vec<i64>, order: &TermOrder) -> Option<Self> {
        match order.compare(&v) {
            Ordering::Equal => return None,
            Ordering::Less => v.iter_mut().for_each(|x| *x = -*x),
            Ordering::Greater => {}
        }
        let (lead, tail) = support(&v, order.active);
        let lead_entries = (0..v.len()).filter(|j| lead >> j & 1 == 1).map(|j| (j, v[j])).collect();
        Some(Self { v, lead, tail, lead_entries })
    }

    /// `lead ≤ w⁺` where `mask` is the support of `w⁺`.
    fn lead_divides(&self, w: &[i64], mask: Mask) -> bool {
        self.lead & !mask == 0 && self.lead_entries.iter().all(|&(j, a)| a <= w[j])
    }

    /// `lead ≤ w⁻` where `mask` is the support of `w⁻`.
    fn lead_divides_tail(&self, w: &[i64], mask: Mask) -> bool {
        self.lead & !mask == 0 && self.lead_entries.iter().all(|&(j, a)| a <= -w[j])
    }

    fn lcm_degree(&self, other: &Binomial, active: Mask) -> i64 {
        (0..self.v.len())
            .filter(|j| active >> j & 1 == 1)
            .map(|j| self.v[j].max(other.v[j]).max(0))
            .sum()
    }
}

fn reduce(v: Vec<i64>, basis: &[Binomial], order: &TermOrder) -> Option<Binomial> {
    let mut r = Binomial::oriented(v, order)?;
    loop {
        if let Some(g) = basis.iter().find(|g| g.lead_divides(&r.v, r.lead)) {
            let v: Vec<i64> = r.v.iter().zip(&g.v).map(|(a, b)| a - b).collect();
            r = Binomial::oriented(v, order)?;
            continue;
        }
        if let Some(g) = basis.iter().find(|g| g.lead_divides_tail(&r.v, r.tail)) {
            let v: Vec<i64> = r.v.iter().zip(&g.v).map(|(a, b)| a + b).collect();
            r = Binomial::oriented(v, order)?;
            continue;
        }
        return Some(r);
    }
}

#[derive(PartialEq, Eq)]
struct Pair {
    degree: i64,
    a: usize,
    b: usize,
}

impl Ord for Pair {
    fn cmp(&self, other: &Self) -> Ordering {
        other.degree.cmp(&self.degree).then_with(|| (other.b, other.a).cmp(&(self.b, self.a)))
    }
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Buchberger completion of `generators` for `order`, returned as a minimal Gröbner basis.
fn groebner(generators: Vec<Vec<i64>>, order: &TermOrder) -> Vec<Vec<i64>> {
    let active = order.active;
    let mut basis: Vec<Binomial> = Vec::new();
    let mut heap = BinaryHeap::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let add = |b: Binomial, basis: &mut Vec<Binomial>, heap: &mut BinaryHeap<Pair>, pending: &mut HashSet<(usize, usize)>| {
        let k = basis.len();
        for (a, g) in basis.iter().enumerate() {
            if g.lead & b.lead != 0 {
                heap.push(Pair { degree: g.lcm_degree(&b, active), a, b: k });
                pending.insert((a, k));
            }
        }
        basis.push(b);
    };
    for g in generators {
        if let Some(b) = reduce(g, &basis, order) {
            add(b, &mut basis, &mut heap, &mut pending);
        }
    }
    while let Some(Pair { a, b, .. }) = heap.pop() {
        pending.remove(&(a, b));
        let lcm: Vec<i64> = basis[a].v.iter().zip(&basis[b].v).map(|(&x, &y)| x.max(y).max(0)).collect();
        let chain = (0..basis.len()).any(|k| {
            k != a
                && k != b
                && basis[k].lead_divides(&lcm, support(&lcm, active).0)
                && !pending.contains(&(a.min(k), a.max(k)))
                && !pending.contains(&(b.min(k), b.max(k)))
        });
        if chain {
            continue;
        }
        let s: Vec<i64> = basis[b].v.iter().zip(&basis[a].v).map(|(x, y)| x - y).collect();
        if let Some(r) = reduce(s, &basis, order) {
            add(r, &mut basis, &mut heap, &mut pending);
        }
    }
    let mut out: Vec<Vec<i64>> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != k && h.lead_divides(&g.v, g.lead) && (!g.lead_divides(&h.v, h.lead) || j < k)
        });
        if !redundant {
            out.push(g.v.clone());
        }
    }
    out
}

fn to_i64(v: &BigInt) -> i64 {
    v.to_i64().expect("lattice vector entry fits in i64")
}

/// Whether some `c ≥ 0` on the active coordinates gives `u_i = −Σ c_j u_j` for every lattice vector.
fn is_bounded(basis: &[Vec<i64>], active: &[usize], i: usize) -> bool {
    let rows: Vec<Vec<i64>> = basis.iter().map(|b| active.iter().map(|&j| b[j]).collect()).collect();
    let rhs: Vec<i64> = basis.iter().map(|b| -b[i]).collect();
    let a = IntMatrix::from_rows(active.len(), &rows).expect("consistent widths");
    lp::find_nonnegative(&a, &rhs).is_some()
}

/// A lattice vector non-negative on `active` with a positive `i` coordinate.
fn unbounded_direction(basis: &[Vec<i64>], active: &[usize], i: usize) -> Vec<i64> {
    let r = basis.len();
    let cols = 2 * r + active.len() + 1;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (s, &j) in active.iter().chain(std::iter::once(&i)).enumerate() {
        let mut row = vec![0; cols];
        for (k, b) in basis.iter().enumerate() {
            row[k] = b[j];
            row[r + k] = -b[j];
        }
        row[2 * r + s] = -1;
        rows.push(row);
        rhs.push(if j == i { 1 } else { 0 });
    }
    let a = IntMatrix::from_rows(cols, &rows).expect("consistent widths");
    let x = lp::find_nonnegative(&a, &rhs).expect("a coordinate is either bounded or unbounded");
    let y = lp::clear_denominators(&x[..2 * r]);
    let n = basis[0].len();
    (0..n)
        .map(|j| {
            let s: BigInt = (0..r).map(|k| (&y[k] - &y[r + k]) * basis[k][j]).sum();
            to_i64(&s)
        })
        .collect()
}

/// A lattice vector strictly positive on the HNF pivot coordinates.
fn positive_on_pivots(hnf_rows: &[Vec<i64>], pivots: &[usize]) -> Vec<i64> {
    let n = hnf_rows[0].len();
    let mut w = vec![0i64; n];
    for (k, row) in hnf_rows.iter().enumerate() {
        let p = pivots[k];
        let c = if w[p] > 0 { 0 } else { (-w[p]) / row[p] + 1 };
        for j in 0..n {
            w[j] += c * row[j];
        }
    }
    w
}

/// A Markov basis of the lattice, minimized.
///
/// # Panics
/// Panics when the ambient dimension exceeds 128, or when some fiber of the
/// lattice is infinite (the lattice meets the non-negative orthant).
pub fn lattice_markov_basis(lattice: &LatticeBasis) -> MoveSet {
    minimize(&markov_generating_set(lattice))
}

/// A (generally non-minimal) Markov basis from project-and-lift.
pub fn markov_generating_set(lattice: &LatticeBasis) -> MoveSet {
    let n = lattice.ambient_dim();
    assert!(n <= 128, "at most 128 coordinates are supported");
    let rows = lattice.generators().to_vec();
    if rows.is_empty() {
        return MoveSet::new();
    }
    let pivots: Vec<usize> = rows.iter().map(|r| r.iter().position(|&x| x != 0).expect("non-zero generator")).collect();
    let mut active: Vec<usize> = pivots.clone();
    let mut moves: Vec<Vec<i64>> = rows.clone();
    moves.push(positive_on_pivots(&rows, &pivots));
    for i in 0..n {
        if active.contains(&i) {
            continue;
        }
        if is_bounded(&rows, &active, i) {
            let mask = active.iter().fold(0 as Mask, |m, &j| m | 1 << j);
            let order = TermOrder { active: mask, eliminate: Some(i) };
            moves = groebner(moves, &order);
        } else {
            moves.push(unbounded_direction(&rows, &active, i));
        }
        active.push(i);
    }
    MoveSet::from_vectors(moves)
}

pub fn kernel_markov_basis(design: &DesignMatrix) -> MoveSet {
    lattice_markov_basis(&crate::exact::kernel_lattice(design.matrix()))
}

/// Whether `to` is reachable from `from` by adding `±m` for `m` in `moves`
/// while staying non-negative. Gives up (returns `None`) after `limit` states.
///
/// States closest to `to` in the 1-norm are expanded first.
pub fn connected(moves: &[&Move], from: &[i64], to: &[i64], limit: usize) -> Option<bool> {
    if from == to {
        return Some(true);
    }
    let distance = |p: &[i64]| -> i64 { p.iter().zip(to).map(|(a, b)| (a - b).abs()).sum() };
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = BinaryHeap::new();
    seen.insert(from.to_vec());
    queue.push(Reverse((distance(from), from.to_vec())));
    while let Some(Reverse((_, p))) = queue.pop() {
        for m in moves {
            for sign in [1, -1] {
                let e = m.entries();
                if p.iter().zip(e).any(|(&x, &d)| x + sign * d < 0) {
                    continue;
                }
                let q: Vec<i64> = p.iter().zip(e).map(|(&x, &d)| x + sign * d).collect();
                if q == to {
                    return Some(true);
                }
                if !seen.contains(&q) {
                    if seen.len() >= limit {
                        return None;
                    }
                    seen.insert(q.clone());
                    queue.push(Reverse((distance(&q), q)));
                }
            }
        }
    }
    Some(false)
}

const SEARCH_LIMIT: usize = 20_000_000;

/// Drops moves whose endpoints are already connected by the others.
///
/// Lattices in the kernel of a matrix with the all-ones vector in its row
/// space are graded by degree; there moves are scanned in increasing degree
/// and kept only when the kept ones do not connect `m⁺` to `m⁻`. Otherwise
/// moves are scanned from the largest degree down and removed when the
/// remaining ones connect their endpoints.
pub fn minimize(set: &MoveSet) -> MoveSet {
    let graded = set.iter().all(|m| m.entries().iter().sum::<i64>() == 0);
    if graded {
        minimize_in_order(set.moves())
    } else {
        let mut alive: Vec<bool> = vec![true; set.len()];
        for k in (0..set.len()).rev() {
            let m = &set.moves()[k];
            let others: Vec<&Move> = set.iter().enumerate().filter(|&(j, _)| j != k && alive[j]).map(|(_, m)| m).collect();
            if connected(&others, &m.positive_part(), &m.negative_part(), SEARCH_LIMIT) == Some(true) {
                alive[k] = false;
            }
        }
        MoveSet::from_moves(set.iter().zip(&alive).filter(|(_, &a)| a).map(|(m, _)| m.clone()))
    }
}

/// One pass over degree-graded moves in the given order, keeping a move only
/// when the moves kept so far do not connect its endpoints.
///
/// With moves listed by non-decreasing degree the result is a minimal Markov
/// basis of whatever the input generates; among moves of equal degree the
/// earlier ones are preferred.
pub fn minimize_in_order(moves: &[Move]) -> MoveSet {
    let mut kept: Vec<&Move> = Vec::new();
    for m in moves {
        let joined = connected(&kept, &m.positive_part(), &m.negative_part(), SEARCH_LIMIT).unwrap_or(false);
        if !joined {
            kept.push(m);
        }
    }
    MoveSet::from_moves(kept.into_iter().cloned())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn independence_two_by_two() {
        let l = LatticeBasis::spanned_by(4, &[vec![1, -1, -1, 1]]).unwrap();
        let mb = lattice_markov_basis(&l);
        assert_eq!(mb.moves(), &[Move::new(vec![1, -1, -1, 1])]);
    }

    #[test]
    fn multiples_are_redundant() {
        let s = MoveSet::from_vectors(vec![vec![1, -1, -1, 1], vec![2, -2, -2, 2]]);
        assert_eq!(minimize(&s).len(), 1);
        assert!(minimize(&MoveSet::new()).is_empty());
    }

    #[test]
    fn twisted_cubic() {
        // kernel of [[1,1,1,1],[0,1,2,3]]: three quadrics
        let a = IntMatrix::from_rows(4, &[vec![1, 1, 1, 1], vec![0, 1, 2, 3]]).unwrap();
        let mb = lattice_markov_basis(&crate::exact::kernel_lattice(&a));
        assert_eq!(mb.len(), 3);
        assert_eq!(mb.max_degree(), 2);
    }
}
