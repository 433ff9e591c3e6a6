//! Simplicial complexes, state spaces and design matrices of hierarchical models.

use std::collections::HashMap;
use std::fmt;

use crate::exact::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("the facet list is empty")]
    NoFacets,
    #[error("facet {0} is empty")]
    EmptyFacet(usize),
    #[error("vertex {vertex} is out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("vertex {0} lies in no facet")]
    UncoveredVertex(usize),
    #[error("arity {0} is below 2")]
    Arity(usize),
    #[error("expected {expected} arities, got {got}")]
    ArityCount { expected: usize, got: usize },
    #[error("table has length {got}, expected {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("table entries must be non-negative")]
    NegativeEntry,
    #[error("unknown model `{0}`")]
    UnknownModel(String),
}

/// The models used throughout the crate, plus arbitrary facet lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelSpec {
    /// The complete bipartite graph with parts {1,2,3} and {4,…,3+N}.
    K3N(usize),
    /// Edges {1,4}, {2,4}, {3,4}.
    ThreeStar,
    /// The complete graph on four vertices with the triangle {1,2,3} filled.
    K4Tilde,
    /// Facets given as 0-based vertex lists.
    Facets { vertex_count: usize, facets: Vec<Vec<usize>> },
}

impl ModelSpec {
    /// Parses `k3n:N`, `three-star` or `k4tilde`.
    pub fn parse(s: &str) -> Result<Self, ModelError> {
        match s {
            "three-star" | "three_star" => Ok(Self::ThreeStar),
            "k4tilde" | "k4_tilde" => Ok(Self::K4Tilde),
            _ => {
                let n = s
                    .strip_prefix("k3n:")
                    .and_then(|n| n.parse::<usize>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| ModelError::UnknownModel(s.to_string()))?;
                Ok(Self::K3N(n))
            }
        }
    }

    /// Parses a facet file: one facet per line, 1-based vertex labels.
    pub fn parse_facets(text: &str) -> Result<Self, ModelError> {
        let mut facets = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let facet = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| match t.parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(ModelError::UnknownModel(format!("bad vertex label `{t}`"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            facets.push(facet);
        }
        let vertex_count = facets.iter().flatten().map(|&v| v + 1).max().unwrap_or(0);
        Ok(Self::Facets { vertex_count, facets })
    }
}

/// A simplicial complex given by its facets (0-based vertices).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertex_count: usize,
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Builds a complex from facets, dropping faces contained in other facets.
    pub fn from_facets(vertex_count: usize, facets: Vec<Vec<usize>>) -> Result<Self, ModelError> {
        if facets.is_empty() {
            return Err(ModelError::NoFacets);
        }
        let mut cleaned: Vec<Vec<usize>> = Vec::new();
        for (i, f) in facets.iter().enumerate() {
            if f.is_empty() {
                return Err(ModelError::EmptyFacet(i));
            }
            if let Some(&v) = f.iter().find(|&&v| v >= vertex_count) {
                return Err(ModelError::VertexOutOfRange { vertex: v + 1, vertex_count });
            }
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            cleaned.push(f);
        }
        let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.contains(x));
        let mut kept: Vec<Vec<usize>> = Vec::new();
        for (i, f) in cleaned.iter().enumerate() {
            let dominated = cleaned.iter().enumerate().any(|(j, g)| {
                j != i && subset(f, g) && (f.len() < g.len() || j < i)
            });
            if !dominated {
                kept.push(f.clone());
            }
        }
        for v in 0..vertex_count {
            if !kept.iter().any(|f| f.contains(&v)) {
                return Err(ModelError::UncoveredVertex(v + 1));
            }
        }
        Ok(Self { vertex_count, facets: kept })
    }

    pub fn build(spec: &ModelSpec) -> Result<Self, ModelError> {
        match spec {
            ModelSpec::K3N(n) => {
                let facets = (0..*n).flat_map(|j| (0..3).map(move |i| vec![i, 3 + j])).collect();
                Self::from_facets(3 + n, facets)
            }
            ModelSpec::ThreeStar => Self::from_facets(4, vec![vec![0, 3], vec![1, 3], vec![2, 3]]),
            ModelSpec::K4Tilde => {
                Self::from_facets(4, vec![vec![0, 1, 2], vec![0, 3], vec![1, 3], vec![2, 3]])
            }
            ModelSpec::Facets { vertex_count, facets } => Self::from_facets(*vertex_count, facets.clone()),
        }
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .facets
            .iter()
            .map(|fa| fa.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{{{}}}", parts.join("} {"))
    }
}

/// States of a table, enumerated in mixed radix with the first node least significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StateSpace {
    arities: Vec<usize>,
}

impl StateSpace {
    pub fn new(arities: Vec<usize>) -> Result<Self, ModelError> {
        if let Some(&a) = arities.iter().find(|&&a| a < 2) {
            return Err(ModelError::Arity(a));
        }
        Ok(Self { arities })
    }

    pub fn binary(nodes: usize) -> Self {
        Self { arities: vec![2; nodes] }
    }

    pub fn arities(&self) -> &[usize] {
        &self.arities
    }

    pub fn nodes(&self) -> usize {
        self.arities.len()
    }

    pub fn total_states(&self) -> usize {
        self.arities.iter().product()
    }

    pub fn index(&self, state: &[usize]) -> usize {
        state.iter().zip(&self.arities).rev().fold(0, |acc, (&x, &a)| acc * a + x)
    }

    pub fn state(&self, mut index: usize) -> Vec<usize> {
        self.arities
            .iter()
            .map(|&a| {
                let x = index % a;
                index /= a;
                x
            })
            .collect()
    }
}

/// The 0/1 matrix sending a table to its stacked facet margins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignMatrix {
    complex: SimplicialComplex,
    states: StateSpace,
    matrix: IntMatrix,
    row_index: HashMap<(usize, usize), usize>,
    facet_offsets: Vec<usize>,
}

impl DesignMatrix {
    pub fn new(complex: SimplicialComplex, arities: Vec<usize>) -> Result<Self, ModelError> {
        if arities.len() != complex.vertex_count() {
            return Err(ModelError::ArityCount { expected: complex.vertex_count(), got: arities.len() });
        }
        let states = StateSpace::new(arities)?;
        let mut row_index = HashMap::new();
        let mut facet_offsets = Vec::new();
        let mut rows = 0;
        for (fi, f) in complex.facets().iter().enumerate() {
            facet_offsets.push(rows);
            let count: usize = f.iter().map(|&v| states.arities()[v]).product();
            for s in 0..count {
                row_index.insert((fi, s), rows + s);
            }
            rows += count;
        }
        let total = states.total_states();
        let mut matrix = IntMatrix::zeros(rows, total);
        for x in 0..total {
            let state = states.state(x);
            for (fi, f) in complex.facets().iter().enumerate() {
                let s = f.iter().rev().fold(0, |acc, &v| acc * states.arities()[v] + state[v]);
                matrix.set(facet_offsets[fi] + s, x, 1);
            }
        }
        Ok(Self { complex, states, matrix, row_index, facet_offsets })
    }

    pub fn binary(spec: &ModelSpec) -> Result<Self, ModelError> {
        let complex = SimplicialComplex::build(spec)?;
        let n = complex.vertex_count();
        Self::new(complex, vec![2; n])
    }

    pub fn k4_tilde() -> Self {
        Self::binary(&ModelSpec::K4Tilde).expect("fixed model is valid")
    }

    pub fn three_star() -> Self {
        Self::binary(&ModelSpec::ThreeStar).expect("fixed model is valid")
    }

    pub fn k3n(n: usize) -> Self {
        Self::binary(&ModelSpec::K3N(n)).expect("N must be positive")
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn states(&self) -> &StateSpace {
        &self.states
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn row_of(&self, facet: usize, facet_state: usize) -> Option<usize> {
        self.row_index.get(&(facet, facet_state)).copied()
    }

    /// Rows belonging to one facet.
    pub fn facet_rows(&self, facet: usize) -> std::ops::Range<usize> {
        let start = self.facet_offsets[facet];
        let end = self.facet_offsets.get(facet + 1).copied().unwrap_or(self.matrix.rows());
        start..end
    }

    pub fn num_rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn num_cells(&self) -> usize {
        self.matrix.cols()
    }

    pub fn columns(&self) -> Vec<Vec<i64>> {
        self.matrix.column_vecs()
    }

    pub fn margin(&self, table: &[i64]) -> Result<Vec<i64>, ModelError> {
        if table.len() != self.num_cells() {
            return Err(ModelError::TableLength { expected: self.num_cells(), got: table.len() });
        }
        if table.iter().any(|&x| x < 0) {
            return Err(ModelError::NegativeEntry);
        }
        Ok(self.matrix.mul_vec(table))
    }
}
