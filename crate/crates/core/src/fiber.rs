//! Exhaustive fibers and fiber-graph connectivity.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::exact::IntMatrix;
use crate::moves::{Move, MoveSet};
use crate::notation::SymmetryGroup;

/// Default limit on the number of tables in one fiber.
pub const DEFAULT_CAP: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FiberError {
    #[error("fiber has more than {0} tables")]
    CapExceeded(usize),
    #[error("margin has length {got}, expected {expected}")]
    MarginLength { expected: usize, got: usize },
    #[error("matrix entries must be non-negative")]
    NegativeEntry,
    #[error("table entry {0} does not fit in a byte")]
    EntryTooLarge(i64),
    #[error("{0}")]
    NotInvariant(String),
}

/// Backtracking enumeration of `{t ≥ 0 : A·t = b}` for a non-negative matrix `A`.
struct Enumerator<'a> {
    a: &'a IntMatrix,
    /// rows touched by each column, with their coefficients
    column_rows: Vec<Vec<(usize, i64)>>,
    /// for each column, the rows whose last non-zero column it is
    closing_rows: Vec<Vec<usize>>,
}

impl<'a> Enumerator<'a> {
    fn new(a: &'a IntMatrix) -> Result<Self, FiberError> {
        if a.entries().iter().any(|&x| x < 0) {
            return Err(FiberError::NegativeEntry);
        }
        let column_rows: Vec<Vec<(usize, i64)>> =
            (0..a.cols()).map(|j| (0..a.rows()).filter(|&r| a.get(r, j) != 0).map(|r| (r, a.get(r, j))).collect()).collect();
        let mut closing_rows = vec![Vec::new(); a.cols()];
        for r in 0..a.rows() {
            if let Some(last) = (0..a.cols()).rev().find(|&j| a.get(r, j) != 0) {
                closing_rows[last].push(r);
            }
        }
        Ok(Self { a, column_rows, closing_rows })
    }

    fn run(&self, margin: &[i64], visit: &mut dyn FnMut(&[i64]) -> bool) -> bool {
        if margin.iter().any(|&x| x < 0) {
            return true;
        }
        // rows without any non-zero column must already be zero
        for (r, &value) in margin.iter().enumerate() {
            if value != 0 && (0..self.a.cols()).all(|j| self.a.get(r, j) == 0) {
                return true;
            }
        }
        let mut rem = margin.to_vec();
        let mut table = vec![0i64; self.a.cols()];
        self.descend(0, &mut rem, &mut table, visit)
    }

    fn descend(&self, j: usize, rem: &mut [i64], table: &mut [i64], visit: &mut dyn FnMut(&[i64]) -> bool) -> bool {
        if j == table.len() {
            return visit(table);
        }
        let rows = &self.column_rows[j];
        let mut hi = rows.iter().map(|&(r, c)| rem[r] / c).min().unwrap_or(0);
        let mut lo = 0;
        for &r in &self.closing_rows[j] {
            let c = self.a.get(r, j);
            if rem[r] % c != 0 {
                return true;
            }
            let forced = rem[r] / c;
            lo = lo.max(forced);
            hi = hi.min(forced);
        }
        for v in (lo..=hi).rev() {
            for &(r, c) in rows {
                rem[r] -= v * c;
            }
            table[j] = v;
            let go_on = self.descend(j + 1, rem, table, visit);
            for &(r, c) in rows {
                rem[r] += v * c;
            }
            if !go_on {
                table[j] = 0;
                return false;
            }
        }
        table[j] = 0;
        true
    }
}

/// Calls `visit` on every non-negative solution of `A·t = margin`, in
/// decreasing lexicographic order, until it returns `false`.
pub fn for_each_table(a: &IntMatrix, margin: &[i64], mut visit: impl FnMut(&[i64]) -> bool) -> Result<(), FiberError> {
    if margin.len() != a.rows() {
        return Err(FiberError::MarginLength { expected: a.rows(), got: margin.len() });
    }
    Enumerator::new(a)?.run(margin, &mut visit);
    Ok(())
}

/// All tables with a given margin, stored compactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    margin: Vec<i64>,
    cells: usize,
    data: Vec<u8>,
}

impl Fiber {
    pub fn margin(&self) -> &[i64] {
        &self.margin
    }

    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.cells).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn table(&self, i: usize) -> Vec<i64> {
        self.raw(i).iter().map(|&x| x as i64).collect()
    }

    pub fn tables(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        (0..self.len()).map(|i| self.table(i))
    }

    fn raw(&self, i: usize) -> &[u8] {
        &self.data[i * self.cells..(i + 1) * self.cells]
    }
}

/// The fiber of `margin`, or an error once more than `cap` tables are found.
pub fn enumerate_fiber(a: &IntMatrix, margin: &[i64], cap: usize) -> Result<Fiber, FiberError> {
    let cells = a.cols();
    let mut data = Vec::new();
    let mut count = 0usize;
    let mut failure = None;
    for_each_table(a, margin, |t| {
        count += 1;
        if count > cap {
            failure = Some(FiberError::CapExceeded(cap));
            return false;
        }
        for &x in t {
            match u8::try_from(x) {
                Ok(b) => data.push(b),
                Err(_) => {
                    failure = Some(FiberError::EntryTooLarge(x));
                    return false;
                }
            }
        }
        true
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Fiber { margin: margin.to_vec(), cells, data })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub component_count: usize,
    pub witness_disconnection: Option<(Vec<i64>, Vec<i64>)>,
    pub max_degree_checked: i64,
}

struct UnionFind {
    parent: Vec<u32>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n as u32).collect(), components: n }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
            self.components -= 1;
        }
    }
}

#[derive(Clone)]
struct SparseMove {
    degree: i64,
    entries: Vec<(usize, i8)>,
}

fn sparse(moves: &MoveSet) -> Vec<SparseMove> {
    moves
        .iter()
        .map(|m: &Move| SparseMove {
            degree: m.degree(),
            entries: m
                .entries()
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| (i, i8::try_from(x).expect("move entry fits in a byte")))
                .collect(),
        })
        .collect()
}

/// Connects a fiber with `moves` (sorted by degree). Returns the component
/// count and the smallest degree from which on the fiber was connected.
fn connect(fiber: &Fiber, moves: &[SparseMove]) -> (UnionFind, Option<i64>) {
    let n = fiber.len();
    let mut uf = UnionFind::new(n);
    if n <= 1 {
        return (uf, Some(0));
    }
    let index: HashMap<&[u8], u32> = (0..n).map(|i| (fiber.raw(i), i as u32)).collect();
    let mut buf = vec![0u8; fiber.cells];
    let mut k = 0;
    while k < moves.len() {
        let degree = moves[k].degree;
        let start = k;
        while k < moves.len() && moves[k].degree == degree {
            k += 1;
        }
        // a move applies only where its first negative cell is occupied
        let mut by_cell: Vec<Vec<&SparseMove>> = vec![Vec::new(); fiber.cells];
        let mut unconditional: Vec<&SparseMove> = Vec::new();
        for m in &moves[start..k] {
            match m.entries.iter().find(|&&(_, d)| d < 0) {
                Some(&(c, _)) => by_cell[c].push(m),
                None => unconditional.push(m),
            }
        }
        for i in 0..n {
            let t = fiber.raw(i);
            let candidates = t
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .flat_map(|(c, _)| by_cell[c].iter())
                .chain(unconditional.iter());
            for m in candidates {
                if m.entries.iter().any(|&(c, d)| (t[c] as i16) + (d as i16) < 0) {
                    continue;
                }
                buf.copy_from_slice(t);
                for &(c, d) in &m.entries {
                    buf[c] = (buf[c] as i16 + d as i16) as u8;
                }
                if let Some(&j) = index.get(buf.as_slice()) {
                    uf.union(i as u32, j);
                }
            }
        }
        if uf.components == 1 {
            return (uf, Some(degree));
        }
    }
    (uf, None)
}

/// Union-find connectivity of a fiber under `±m` for `m ∈ moves`.
pub fn is_connected(fiber: &Fiber, moves: &MoveSet) -> ConnectivityReport {
    let sp = sparse(moves);
    let (mut uf, _) = connect(fiber, &sp);
    let mut witness = None;
    if uf.components > 1 {
        let root = uf.find(0);
        let other = (1..fiber.len() as u32).find(|&i| uf.find(i) != root).expect("more than one component");
        witness = Some((fiber.table(0), fiber.table(other as usize)));
    }
    ConnectivityReport {
        component_count: if fiber.is_empty() { 0 } else { uf.components },
        witness_disconnection: witness,
        max_degree_checked: moves.max_degree(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCheckReport {
    pub max_table_degree: i64,
    pub fibers_checked: usize,
    pub tables_checked: usize,
    /// margin and two tables in different components of the first disconnected fiber
    pub witness: Option<(Vec<i64>, Vec<i64>, Vec<i64>)>,
    /// smallest `d` such that the moves of degree at most `d` connect every checked fiber
    pub essential_degree: i64,
}

impl DegreeCheckReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// All fibers of tables of total size `d`, grouped by the value of the
/// first `split_rows` margin coordinates so that memory stays bounded.
fn for_each_fiber(
    a: &IntMatrix,
    d: i64,
    split_rows: usize,
    cap: usize,
    keep_head: &dyn Fn(&[i64]) -> bool,
    mut visit: impl FnMut(Fiber) -> Result<(), FiberError>,
) -> Result<(), FiberError> {
    let n = a.cols();
    let head = IntMatrix::from_rows(n, &(0..split_rows).map(|r| a.row(r).to_vec()).collect::<Vec<_>>()).expect("rows");
    let column_rows: Vec<Vec<(usize, i64)>> =
        (0..n).map(|j| (0..a.rows()).filter(|&r| a.get(r, j) != 0).map(|r| (r, a.get(r, j))).collect()).collect();
    let mut heads: Vec<Vec<i64>> = Vec::new();
    // every table of size d has a head margin summing to d when the head rows partition the cells
    compositions(split_rows, d, &mut |c| {
        if keep_head(c) {
            heads.push(c.to_vec())
        }
    });
    for h in heads {
        let mut groups: BTreeMap<Vec<i64>, Vec<u8>> = BTreeMap::new();
        let mut failure = None;
        let mut margin = vec![0i64; a.rows()];
        for_each_table(&head, &h, |t| {
            margin.iter_mut().for_each(|x| *x = 0);
            for (j, &x) in t.iter().enumerate() {
                if x != 0 {
                    for &(r, c) in &column_rows[j] {
                        margin[r] += c * x;
                    }
                }
            }
            let data = groups.entry(margin.clone()).or_default();
            if data.len() / n.max(1) >= cap {
                failure = Some(FiberError::CapExceeded(cap));
                return false;
            }
            for &x in t {
                match u8::try_from(x) {
                    Ok(b) => data.push(b),
                    Err(_) => {
                        failure = Some(FiberError::EntryTooLarge(x));
                        return false;
                    }
                }
            }
            true
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        for (margin, data) in groups {
            visit(Fiber { margin, cells: n, data })?;
        }
    }
    Ok(())
}

fn compositions(parts: usize, total: i64, visit: &mut dyn FnMut(&[i64])) {
    fn go(k: usize, left: i64, cur: &mut Vec<i64>, parts: usize, visit: &mut dyn FnMut(&[i64])) {
        if k + 1 == parts {
            cur.push(left);
            visit(cur);
            cur.pop();
            return;
        }
        for v in 0..=left {
            cur.push(v);
            go(k + 1, left - v, cur, parts, visit);
            cur.pop();
        }
    }
    if parts == 0 {
        return;
    }
    go(0, total, &mut Vec::with_capacity(parts), parts, visit);
}

/// Rows of the first block of rows that partition the columns (each column hit exactly once).
fn partition_prefix(a: &IntMatrix) -> usize {
    let mut hits = vec![0; a.cols()];
    for r in 0..a.rows() {
        for (j, h) in hits.iter_mut().enumerate() {
            *h += a.get(r, j);
        }
        if hits.iter().all(|&h| h == 1) {
            return r + 1;
        }
        if hits.iter().any(|&h| h > 1) {
            break;
        }
    }
    0
}

/// Checks that `moves` connects every fiber of tables of total size at most `maxdeg`.
///
/// The first rows of `a` must partition the columns (as the rows of one
/// facet of a design matrix do).
pub fn markov_degree_check(a: &IntMatrix, moves: &MoveSet, maxdeg: i64, cap: usize) -> Result<DegreeCheckReport, FiberError> {
    degree_check(a, moves, maxdeg, cap, &|_| true, &|_| true)
}

/// [`markov_degree_check`] visiting one fiber per orbit of margins under
/// `group`, plus every fiber with a single table.
///
/// Fails unless every element of `group` permutes the rows of `a`. The check runs on the closure of `moves` under `group`;
/// every added move must already be connected in its own fiber by moves of
/// no larger degree, so the verdict and the essential degree carry over.
/// `fibers_checked` and `tables_checked` count the visited fibers only.
pub fn markov_degree_check_symmetric(
    a: &IntMatrix,
    moves: &MoveSet,
    maxdeg: i64,
    cap: usize,
    group: &SymmetryGroup,
) -> Result<DegreeCheckReport, FiberError> {
    let split = partition_prefix(a);
    assert!(split > 0, "the leading rows of the matrix must partition its columns");
    let row_index: HashMap<&[i64], usize> = (0..a.rows()).map(|r| (a.row(r), r)).collect();
    let mut row_maps: Vec<Vec<usize>> = Vec::new();
    for g in group.elements() {
        let p = g.state_permutation();
        if p.len() != a.cols() {
            return Err(FiberError::NotInvariant(format!("group acts on {} cells, matrix has {}", p.len(), a.cols())));
        }
        let mut map = Vec::with_capacity(a.rows());
        let mut moved = vec![0; a.cols()];
        for r in 0..a.rows() {
            for (j, &x) in a.row(r).iter().enumerate() {
                moved[p[j]] = x;
            }
            match row_index.get(moved.as_slice()) {
                Some(&image) => map.push(image),
                None => return Err(FiberError::NotInvariant("a symmetry does not permute the rows of the matrix".into())),
            }
        }
        row_maps.push(map);
    }
    // elements fixing the leading block also act on the leading margins
    let head_maps: Vec<&[usize]> = row_maps.iter().filter(|m| m[..split].iter().all(|&r| r < split)).map(|m| &m[..split]).collect();
    let closed = closure(moves, group);
    if closed.len() > moves.len() {
        let sp = sparse(moves);
        for m in closed.iter().filter(|m| !moves.contains(m)) {
            let plus = m.positive_part();
            let fiber = enumerate_fiber(a, &a.mul_vec(&plus), cap)?;
            let below: Vec<SparseMove> = sp.iter().filter(|x| x.degree <= m.degree()).map(SparseMove::clone).collect();
            let (mut uf, _) = connect(&fiber, &below);
            let position = |t: &[i64]| fiber.tables().position(|u| u == t).expect("table in its own fiber") as u32;
            let (i, j) = (position(&plus), position(&m.negative_part()));
            if uf.find(i) != uf.find(j) {
                return Err(FiberError::NotInvariant(format!("the symmetric image {m} is not connected by the moves")));
            }
        }
    }
    let keep_head = |head: &[i64]| is_largest_image(head, &head_maps);
    let row_refs: Vec<&[usize]> = row_maps.iter().map(Vec::as_slice).collect();
    let keep_margin = |margin: &[i64]| is_largest_image(margin, &row_refs);
    degree_check(a, &closed, maxdeg, cap, &keep_head, &keep_margin)
}

/// Whether no permuted copy of `v` is lexicographically larger.
fn is_largest_image(v: &[i64], maps: &[&[usize]]) -> bool {
    let mut image = vec![0; v.len()];
    maps.iter().all(|map| {
        for (r, &x) in v.iter().enumerate() {
            image[map[r]] = x;
        }
        image.as_slice() <= v
    })
}

/// The smallest superset of `moves` mapped into itself by `group`, up to sign.
fn closure(moves: &MoveSet, group: &SymmetryGroup) -> MoveSet {
    let generators = group.generators();
    let mut all: HashSet<Move> = moves.iter().cloned().collect();
    let mut frontier: Vec<Move> = moves.iter().cloned().collect();
    while let Some(m) = frontier.pop() {
        for g in &generators {
            let image = g.apply(&m).canonical();
            if all.insert(image.clone()) {
                frontier.push(image);
            }
        }
    }
    MoveSet::from_moves(all)
}

fn degree_check(
    a: &IntMatrix,
    moves: &MoveSet,
    maxdeg: i64,
    cap: usize,
    keep_head: &dyn Fn(&[i64]) -> bool,
    keep_margin: &dyn Fn(&[i64]) -> bool,
) -> Result<DegreeCheckReport, FiberError> {
    let split = partition_prefix(a);
    assert!(split > 0, "the leading rows of the matrix must partition its columns");
    let sp = sparse(moves);
    let mut report =
        DegreeCheckReport { max_table_degree: maxdeg, fibers_checked: 0, tables_checked: 0, witness: None, essential_degree: 0 };
    for d in 2..=maxdeg {
        for_each_fiber(a, d, split, cap, keep_head, |fiber| {
            if fiber.len() > 1 && !keep_margin(&fiber.margin) {
                return Ok(());
            }
            report.fibers_checked += 1;
            report.tables_checked += fiber.len();
            let (mut uf, connected_at) = connect(&fiber, &sp);
            match connected_at {
                Some(deg) => report.essential_degree = report.essential_degree.max(deg),
                None if report.witness.is_none() => {
                    let root = uf.find(0);
                    let other = (1..fiber.len() as u32).find(|&i| uf.find(i) != root).expect("disconnected");
                    report.witness = Some((fiber.margin.clone(), fiber.table(0), fiber.table(other as usize)));
                }
                None => {}
            }
            Ok(())
        })?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn independence() -> IntMatrix {
        IntMatrix::from_rows(4, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1], vec![1, 0, 1, 0], vec![0, 1, 0, 1]]).unwrap()
    }

    #[test]
    fn two_by_two_fiber() {
        let f = enumerate_fiber(&independence(), &[1, 1, 1, 1], DEFAULT_CAP).unwrap();
        assert_eq!(f.len(), 2);
        let basic = MoveSet::from_vectors(vec![vec![1, -1, -1, 1]]);
        assert_eq!(is_connected(&f, &basic).component_count, 1);
        let r = is_connected(&f, &MoveSet::new());
        assert_eq!(r.component_count, 2);
        assert!(r.witness_disconnection.is_some());
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(enumerate_fiber(&independence(), &[2, 2, 2, 2], 2), Err(FiberError::CapExceeded(2)));
    }

    #[test]
    fn degree_check() {
        let basic = MoveSet::from_vectors(vec![vec![1, -1, -1, 1]]);
        let r = markov_degree_check(&independence(), &basic, 5, DEFAULT_CAP).unwrap();
        assert!(r.passed());
        assert_eq!(r.essential_degree, 2);
        let r = markov_degree_check(&independence(), &MoveSet::new(), 3, DEFAULT_CAP).unwrap();
        assert!(!r.passed());
    }
}
