//! Integer moves and canonical move sets.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::exact::{ExactError, IntMatrix};

/// An integer vector `v = v⁺ − v⁻` over a state space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move(Vec<i64>);

impl Move {
    pub fn new(entries: Vec<i64>) -> Self {
        Self(entries)
    }

    pub fn zero(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `|v⁺|₁`.
    pub fn degree(&self) -> i64 {
        self.0.iter().filter(|&&x| x > 0).sum()
    }

    pub fn positive_part(&self) -> Vec<i64> {
        self.0.iter().map(|&x| x.max(0)).collect()
    }

    pub fn negative_part(&self) -> Vec<i64> {
        self.0.iter().map(|&x| (-x).max(0)).collect()
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    /// The representative of `±v` whose first non-zero entry is positive.
    pub fn canonical(&self) -> Self {
        match self.0.iter().find(|&&x| x != 0) {
            Some(&x) if x < 0 => self.negated(),
            _ => self.clone(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.0.iter().find(|&&x| x != 0).is_none_or(|&x| x > 0)
    }

    pub fn add(&self, other: &Move) -> Move {
        Move(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Move) -> Move {
        Move(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl From<Vec<i64>> for Move {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A set of sign-canonical non-zero moves ordered by degree, then lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MoveSet {
    moves: Vec<Move>,
}

impl MoveSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_moves<I: IntoIterator<Item = Move>>(moves: I) -> Self {
        let mut seen = HashSet::new();
        let mut out: Vec<Move> = moves
            .into_iter()
            .filter(|m| !m.is_zero())
            .map(|m| m.canonical())
            .filter(|m| seen.insert(m.clone()))
            .collect();
        out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        Self { moves: out }
    }

    pub fn from_vectors<I: IntoIterator<Item = Vec<i64>>>(vectors: I) -> Self {
        Self::from_moves(vectors.into_iter().map(Move::new))
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Move> {
        self.moves.iter()
    }

    /// Membership up to global sign.
    pub fn contains(&self, m: &Move) -> bool {
        let c = m.canonical();
        self.moves.binary_search_by(|x| x.degree().cmp(&c.degree()).then_with(|| x.cmp(&c))).is_ok()
    }

    pub fn union(&self, other: &MoveSet) -> MoveSet {
        MoveSet::from_moves(self.moves.iter().chain(other.moves.iter()).cloned())
    }

    /// Map degree → number of moves.
    pub fn degree_stats(&self) -> BTreeMap<i64, usize> {
        let mut stats = BTreeMap::new();
        for m in &self.moves {
            *stats.entry(m.degree()).or_insert(0) += 1;
        }
        stats
    }

    /// Largest degree, or 0 for the empty set.
    pub fn max_degree(&self) -> i64 {
        self.moves.iter().map(Move::degree).max().unwrap_or(0)
    }

    /// The 4ti2 `.mar` layout: a `rows cols` header, then one move per line.
    pub fn to_4ti2(&self) -> String {
        let cols = self.moves.first().map_or(0, Move::len);
        let mut out = format!("{} {}\n", self.moves.len(), cols);
        for m in &self.moves {
            let line: Vec<String> = m.entries().iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Reads the 4ti2 `.mar` layout written by [`MoveSet::to_4ti2`].
    pub fn parse_4ti2(text: &str) -> Result<Self, ExactError> {
        let m = IntMatrix::parse(text)?;
        Ok(Self::from_vectors(m.row_vecs()))
    }

    /// Moves of degree at most `d`.
    pub fn truncated(&self, d: i64) -> MoveSet {
        MoveSet { moves: self.moves.iter().filter(|m| m.degree() <= d).cloned().collect() }
    }
}

impl<'a> IntoIterator for &'a MoveSet {
    type Item = &'a Move;
    type IntoIter = std::slice::Iter<'a, Move>;

    fn into_iter(self) -> Self::IntoIter {
        self.moves.iter()
    }
}

impl FromIterator<Move> for MoveSet {
    fn from_iter<T: IntoIterator<Item = Move>>(iter: T) -> Self {
        Self::from_moves(iter)
    }
}
