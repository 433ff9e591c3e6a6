//! Tableau and tensor notations, symmetry groups and parameterized move families.
//!
//! A binary state `x = (x1, …, xk)` sits at tensor position `Σ xᵢ·2^(i−1)`.
//! Tableau rows list a state in node order `x1x2…xk`; tensor strings list it
//! most significant bit first, `xk…x1`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::moves::{Move, MoveSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NotationError {
    #[error("state entry {0} is not binary")]
    NonBinary(usize),
    #[error("move is not balanced: {0} positive vs {1} negative rows")]
    Unbalanced(i64, i64),
    #[error("row `{row}` has {got} nodes, expected {expected}")]
    RowLength { row: String, got: usize, expected: usize },
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(char),
    #[error("cannot parse `{0}`")]
    Syntax(String),
}

/// Position of a binary state (node order) in the tensor layout.
pub fn tensor_index(state: &[usize]) -> Result<usize, NotationError> {
    state.iter().rev().try_fold(0usize, |acc, &x| {
        if x > 1 {
            Err(NotationError::NonBinary(x))
        } else {
            Ok(acc * 2 + x)
        }
    })
}

/// The binary state (node order) at a tensor position.
pub fn state_of_index(index: usize, nodes: usize) -> Vec<usize> {
    (0..nodes).map(|i| (index >> i) & 1).collect()
}

/// Renders a position as the bit string `xk…x1`.
pub fn tensor_string(index: usize, nodes: usize) -> String {
    (0..nodes).rev().map(|i| if (index >> i) & 1 == 1 { '1' } else { '0' }).collect()
}

/// Parses a bit string `xk…x1` into a position.
pub fn parse_tensor_string(s: &str) -> Result<usize, NotationError> {
    let state: Vec<usize> = s
        .chars()
        .rev()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(NotationError::Syntax(s.to_string())),
        })
        .collect::<Result<_, _>>()?;
    tensor_index(&state)
}

/// Renders a state in node order `x1…xk`.
pub fn row_string(index: usize, nodes: usize) -> String {
    (0..nodes).map(|i| if (index >> i) & 1 == 1 { '1' } else { '0' }).collect()
}

/// Parses a node-order row such as `0110` into a tensor position.
pub fn parse_row(row: &str, nodes: usize) -> Result<usize, NotationError> {
    let bits: Vec<usize> = row
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(NotationError::Syntax(row.to_string())),
        })
        .collect::<Result<_, _>>()?;
    if bits.len() != nodes {
        return Err(NotationError::RowLength { row: row.to_string(), got: bits.len(), expected: nodes });
    }
    tensor_index(&bits)
}

/// A move written as two multisets of states.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tableau {
    nodes: usize,
    positive_rows: Vec<usize>,
    negative_rows: Vec<usize>,
}

impl Tableau {
    pub fn new(nodes: usize, mut positive_rows: Vec<usize>, mut negative_rows: Vec<usize>) -> Result<Self, NotationError> {
        if positive_rows.len() != negative_rows.len() {
            return Err(NotationError::Unbalanced(positive_rows.len() as i64, negative_rows.len() as i64));
        }
        positive_rows.sort_unstable_by_key(|&r| row_string(r, nodes));
        negative_rows.sort_unstable_by_key(|&r| row_string(r, nodes));
        Ok(Self { nodes, positive_rows, negative_rows })
    }

    pub fn from_move(m: &Move, nodes: usize) -> Result<Self, NotationError> {
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for (i, &x) in m.entries().iter().enumerate() {
            let target = if x > 0 { &mut pos } else { &mut neg };
            target.extend(std::iter::repeat_n(i, x.unsigned_abs() as usize));
        }
        Self::new(nodes, pos, neg)
    }

    pub fn to_move(&self) -> Move {
        let mut v = vec![0i64; 1 << self.nodes];
        for &r in &self.positive_rows {
            v[r] += 1;
        }
        for &r in &self.negative_rows {
            v[r] -= 1;
        }
        Move::new(v)
    }

    pub fn positive_rows(&self) -> &[usize] {
        &self.positive_rows
    }

    pub fn negative_rows(&self) -> &[usize] {
        &self.negative_rows
    }

    /// Parses `[r1;r2;…]-[s1;s2;…]` with node-order bit rows.
    pub fn parse(text: &str, nodes: usize) -> Result<Self, NotationError> {
        let (pos, neg) = split_tableau(text)?;
        let parse_all = |rows: Vec<String>| rows.iter().map(|r| parse_row(r, nodes)).collect::<Result<Vec<_>, _>>();
        Self::new(nodes, parse_all(pos)?, parse_all(neg)?)
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render = |rows: &[usize]| rows.iter().map(|&r| row_string(r, self.nodes)).collect::<Vec<_>>().join(";");
        write!(f, "[{}]-[{}]", render(&self.positive_rows), render(&self.negative_rows))
    }
}

fn split_tableau(text: &str) -> Result<(Vec<String>, Vec<String>), NotationError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || NotationError::Syntax(text.to_string());
    let (pos, neg) = compact.split_once("]-[").ok_or_else(bad)?;
    let pos = pos.strip_prefix('[').ok_or_else(bad)?;
    let neg = neg.strip_suffix(']').ok_or_else(bad)?;
    let rows = |s: &str| -> Vec<String> {
        if s.is_empty() {
            Vec::new()
        } else {
            s.split(';').map(str::to_string).collect()
        }
    };
    Ok((rows(pos), rows(neg)))
}

/// Flat comma-separated rendering of a move.
pub fn tensor_text(m: &Move) -> String {
    m.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Parses a flat comma- or whitespace-separated integer list.
pub fn parse_tensor(text: &str) -> Result<Move, NotationError> {
    text.trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']'])
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| NotationError::Syntax(t.to_string())))
        .collect::<Result<Vec<_>, _>>()
        .map(Move::new)
}

/// One symmetry: a node permutation followed by bit flips.
///
/// The image of a state `x` has `y[perm[i]] = x[i] ⊕ flip[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symmetry {
    perm: Vec<usize>,
    flip: Vec<bool>,
}

impl Symmetry {
    pub fn new(perm: Vec<usize>, flip: Vec<bool>) -> Self {
        assert_eq!(perm.len(), flip.len());
        Self { perm, flip }
    }

    pub fn identity(nodes: usize) -> Self {
        Self { perm: (0..nodes).collect(), flip: vec![false; nodes] }
    }

    pub fn map_state(&self, index: usize) -> usize {
        let mut out = 0;
        for (i, (&p, &f)) in self.perm.iter().zip(&self.flip).enumerate() {
            let bit = ((index >> i) & 1 == 1) ^ f;
            if bit {
                out |= 1 << p;
            }
        }
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Symmetry) -> Symmetry {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut flip = vec![false; n];
        for i in 0..n {
            let mid = other.perm[i];
            perm[i] = self.perm[mid];
            flip[i] = other.flip[i] ^ self.flip[mid];
        }
        Symmetry { perm, flip }
    }

    pub fn apply(&self, m: &Move) -> Move {
        let mut v = vec![0i64; m.len()];
        for (i, &x) in m.entries().iter().enumerate() {
            v[self.map_state(i)] = x;
        }
        Move::new(v)
    }

    /// The state permutation induced on `2^nodes` positions.
    pub fn state_permutation(&self) -> Vec<usize> {
        (0..1usize << self.perm.len()).map(|i| self.map_state(i)).collect()
    }
}

/// Node permutations combined with bit flips on selected nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    nodes: usize,
    elements: Vec<Symmetry>,
}

impl SymmetryGroup {
    /// All products of the listed node permutations with flips on `flippable`.
    pub fn products(nodes: usize, permutations: &[Vec<usize>], flippable: &[usize]) -> Self {
        let mut elements = Vec::new();
        for perm in permutations {
            for mask in 0..1usize << flippable.len() {
                let mut flip = vec![false; nodes];
                for (k, &node) in flippable.iter().enumerate() {
                    flip[node] = (mask >> k) & 1 == 1;
                }
                elements.push(Symmetry::new(perm.clone(), flip));
            }
        }
        Self { nodes, elements }
    }

    /// Permutations of `blocks` (each permuted independently) times all flips.
    pub fn block_permutations(nodes: usize, blocks: &[Vec<usize>], flippable: &[usize]) -> Self {
        let mut perms: Vec<Vec<usize>> = vec![(0..nodes).collect()];
        for block in blocks {
            let mut next = Vec::new();
            for base in &perms {
                for order in permutations_of(block) {
                    let mut p = base.clone();
                    for (&from, &to) in block.iter().zip(&order) {
                        p[from] = to;
                    }
                    next.push(p);
                }
            }
            perms = next;
        }
        Self::products(nodes, &perms, flippable)
    }

    /// Permutations of the first three nodes and all bit flips on three nodes.
    pub fn triangle() -> Self {
        Self::block_permutations(3, &[vec![0, 1, 2]], &[0, 1, 2])
    }

    /// Symmetries of the three-star on four nodes.
    pub fn three_star() -> Self {
        Self::block_permutations(4, &[vec![0, 1, 2]], &[0, 1, 2, 3])
    }

    /// Symmetries of K_{3,N}: permute {1,2,3}, permute the N others, flip anything.
    pub fn k3n(n: usize) -> Self {
        let nodes = 3 + n;
        Self::block_permutations(nodes, &[vec![0, 1, 2], (3..nodes).collect()], &(0..nodes).collect::<Vec<_>>())
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn elements(&self) -> &[Symmetry] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// A subset of the elements that generates the group, picked greedily.
    pub fn generators(&self) -> Vec<Symmetry> {
        let mut gens: Vec<Symmetry> = Vec::new();
        let mut reached: HashSet<Symmetry> = HashSet::from([Symmetry::identity(self.nodes)]);
        for g in &self.elements {
            if reached.contains(g) {
                continue;
            }
            gens.push(g.clone());
            let mut frontier: Vec<Symmetry> = reached.iter().cloned().collect();
            while let Some(x) = frontier.pop() {
                for s in &gens {
                    let y = s.compose(&x);
                    if reached.insert(y.clone()) {
                        frontier.push(y);
                    }
                }
            }
        }
        gens
    }

    /// Whether the element list is closed under composition.
    pub fn is_closed(&self) -> bool {
        let set: HashSet<&Symmetry> = self.elements.iter().collect();
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| set.contains(&a.compose(b))))
    }
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// All distinct images of `m` under `group`, identified up to sign.
pub fn orbit(m: &Move, group: &SymmetryGroup) -> MoveSet {
    MoveSet::from_moves(group.elements().iter().map(|g| g.apply(m)))
}

/// Splits a set into orbits; returns representatives with orbit sizes.
pub fn orbit_decomposition(set: &MoveSet, group: &SymmetryGroup) -> Vec<(Move, usize)> {
    let mut seen: HashSet<Move> = HashSet::new();
    let mut out = Vec::new();
    for m in set {
        if seen.contains(m) {
            continue;
        }
        let o = orbit(m, group);
        for x in &o {
            seen.insert(x.clone());
        }
        out.push((m.clone(), o.len()));
    }
    out
}

/// Expands a tableau with symbolic entries over all 0/1 assignments.
///
/// Rows are written in node order. Each entry is `0`, `1`, a letter, or `~`
/// followed by a letter for the complemented value, e.g.
/// `[00ac;11ac]-[01ac;10ac]` or `[abc0;~a~b~c0]-[abc1;~a~b~c1]`.
pub fn expand_family(text: &str, nodes: usize) -> Result<MoveSet, NotationError> {
    let (pos, neg) = split_tableau(text)?;
    let parse_rows = |rows: &[String]| -> Result<Vec<Vec<Entry>>, NotationError> {
        rows.iter().map(|r| parse_symbolic_row(r, nodes)).collect()
    };
    let pos = parse_rows(&pos)?;
    let neg = parse_rows(&neg)?;
    let mut symbols: Vec<char> = pos
        .iter()
        .chain(&neg)
        .flatten()
        .filter_map(|e| match e {
            Entry::Symbol(c, _) => Some(*c),
            Entry::Bit(_) => None,
        })
        .collect();
    symbols.sort_unstable();
    symbols.dedup();
    let mut moves = Vec::new();
    for mask in 0..1usize << symbols.len() {
        let values: BTreeMap<char, usize> =
            symbols.iter().enumerate().map(|(k, &c)| (c, (mask >> k) & 1)).collect();
        let inst = |rows: &[Vec<Entry>]| -> Vec<usize> {
            rows.iter()
                .map(|row| {
                    let bits: Vec<usize> = row
                        .iter()
                        .map(|e| match *e {
                            Entry::Bit(b) => b,
                            Entry::Symbol(c, bar) => values[&c] ^ usize::from(bar),
                        })
                        .collect();
                    tensor_index(&bits).expect("bits are binary")
                })
                .collect()
        };
        let t = Tableau::new(nodes, inst(&pos), inst(&neg))?;
        moves.push(t.to_move());
    }
    Ok(MoveSet::from_moves(moves))
}

#[derive(Clone, Copy, Debug)]
enum Entry {
    Bit(usize),
    Symbol(char, bool),
}

fn parse_symbolic_row(row: &str, nodes: usize) -> Result<Vec<Entry>, NotationError> {
    let mut out = Vec::new();
    let mut chars = row.chars();
    while let Some(c) = chars.next() {
        out.push(match c {
            '0' => Entry::Bit(0),
            '1' => Entry::Bit(1),
            '~' => match chars.next() {
                Some(s) if s.is_ascii_lowercase() => Entry::Symbol(s, true),
                Some(s) => return Err(NotationError::UnboundSymbol(s)),
                None => return Err(NotationError::Syntax(row.to_string())),
            },
            s if s.is_ascii_lowercase() => Entry::Symbol(s, false),
            s => return Err(NotationError::UnboundSymbol(s)),
        });
    }
    if out.len() != nodes {
        return Err(NotationError::RowLength { row: row.to_string(), got: out.len(), expected: nodes });
    }
    Ok(out)
}

/// Reads a `2×2×2` sign cube such as `+- 00 / -+ 00`.
///
/// The text lists two lines separated by `/`; each line holds two blocks of
/// two characters. `axes[k]` names the node (0, 1 or 2) indexed by the line,
/// the block and the character respectively.
pub fn parse_cube(text: &str, axes: [usize; 3]) -> Result<Move, NotationError> {
    let lines: Vec<&str> = text.split('/').map(str::trim).collect();
    if lines.len() != 2 {
        return Err(NotationError::Syntax(text.to_string()));
    }
    let mut v = vec![0i64; 8];
    for (li, line) in lines.iter().enumerate() {
        let blocks: Vec<&str> = line.split_whitespace().collect();
        if blocks.len() != 2 {
            return Err(NotationError::Syntax(text.to_string()));
        }
        for (bi, block) in blocks.iter().enumerate() {
            let chars: Vec<char> = block.chars().collect();
            if chars.len() != 2 {
                return Err(NotationError::Syntax(text.to_string()));
            }
            for (ci, ch) in chars.iter().enumerate() {
                let value = match ch {
                    '+' => 1,
                    '-' => -1,
                    '0' => 0,
                    _ => return Err(NotationError::Syntax(text.to_string())),
                };
                let mut state = [0usize; 3];
                state[axes[0]] = li;
                state[axes[1]] = bi;
                state[axes[2]] = ci;
                v[tensor_index(&state).expect("binary")] = value;
            }
        }
    }
    Ok(Move::new(v))
}
