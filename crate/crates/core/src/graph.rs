//! Graphs with self-loops: construction, named families, components,
//! and canonical codes for isomorphism deduplication.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

/// Largest order for which the factorial canonical-code scan is allowed.
pub const MAX_CANONICAL_ORDER: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex index {index} out of range for order {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("duplicate loop at vertex {0}")]
    DuplicateLoop(usize),
    #[error("edge ({0}, {0}) in edge list; loops belong in the loop list")]
    SelfPairInEdgeList(usize),
    #[error("order {n} incompatible with family {family}")]
    IncompatibleOrder { family: String, n: usize },
    #[error("order {0} exceeds the canonical-code limit of {MAX_CANONICAL_ORDER}")]
    OrderTooLarge(usize),
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("graph is not connected")]
    NotConnected,
}

/// A simple graph together with a set of looped vertices: the pair (G, S).
///
/// Edges are unordered pairs of distinct 0-indexed vertices. Loops are kept
/// as a vertex set so that the edge count m and loop count sigma never mix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SelfLoopGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    loops: BTreeSet<usize>,
}

impl SelfLoopGraph {
    /// Builds and validates a graph from raw lists.
    pub fn from_edge_list(
        n: usize,
        edges: &[(usize, usize)],
        loops: &[usize],
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut edge_set = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::IndexOutOfRange { index: u, n });
            }
            if v >= n {
                return Err(GraphError::IndexOutOfRange { index: v, n });
            }
            if u == v {
                return Err(GraphError::SelfPairInEdgeList(u));
            }
            let key = (u.min(v), u.max(v));
            if !edge_set.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
        }
        let mut loop_set = BTreeSet::new();
        for &v in loops {
            if v >= n {
                return Err(GraphError::IndexOutOfRange { index: v, n });
            }
            if !loop_set.insert(v) {
                return Err(GraphError::DuplicateLoop(v));
            }
        }
        Ok(Self {
            n,
            edges: edge_set,
            loops: loop_set,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of (non-loop) edges, m.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of self-loops, sigma.
    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        self.loops.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops.contains(&v)
    }

    /// Symmetric 0/1 adjacency matrix; a_ii = 1 iff vertex i carries a loop.
    pub fn adjacency_matrix(&self) -> AdjacencyMatrix {
        let n = self.n;
        let mut entries = vec![0u8; n * n];
        for &(u, v) in &self.edges {
            entries[u * n + v] = 1;
            entries[v * n + u] = 1;
        }
        for &v in &self.loops {
            entries[v * n + v] = 1;
        }
        AdjacencyMatrix { order: n, entries }
    }

    /// Vertex-shifted union: vertices of `other` come after those of `self`.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let offset = self.n;
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(u, v)| (u + offset, v + offset)));
        let mut loops = self.loops.clone();
        loops.extend(other.loops.iter().map(|&v| v + offset));
        Self {
            n: self.n + other.n,
            edges,
            loops,
        }
    }

    /// Induced connected components, relabeled to 0..k and ordered by their
    /// smallest original vertex. Loops do not affect connectivity.
    pub fn connected_components(&self) -> Vec<Self> {
        let n = self.n;
        let mut comp = vec![usize::MAX; n];
        let mut order = Vec::new();
        let mut stack = Vec::new();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = order.len();
            order.push(Vec::new());
            comp[start] = id;
            stack.push(start);
            while let Some(v) = stack.pop() {
                order[id].push(v);
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            order[id].sort_unstable();
        }
        order
            .iter()
            .map(|vertices| {
                let local =
                    |v: usize| vertices.binary_search(&v).expect("vertex in its component");
                let edges = self
                    .edges
                    .iter()
                    .filter(|(u, _)| comp[*u] == comp[vertices[0]])
                    .map(|&(u, v)| (local(u), local(v)))
                    .collect();
                let loops = vertices
                    .iter()
                    .filter(|v| self.loops.contains(v))
                    .map(|&v| local(v))
                    .collect();
                Self {
                    n: vertices.len(),
                    edges,
                    loops,
                }
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Packs upper-triangle edge bits then loop bits into a word, first pair
    /// most significant. Only valid for n <= 8 (at most 36 bits).
    pub fn packed_bits(&self) -> u64 {
        debug_assert!(self.n <= MAX_CANONICAL_ORDER);
        let mut code: u64 = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                code = (code << 1) | u64::from(self.edges.contains(&(u, v)));
            }
        }
        for v in 0..self.n {
            code = (code << 1) | u64::from(self.loops.contains(&v));
        }
        code
    }

    /// Lexicographically minimal packed encoding over all vertex
    /// permutations. Equal codes hold exactly for isomorphic graphs.
    pub fn canonical_code(&self) -> Result<CanonicalCode, GraphError> {
        let n = self.n;
        if n > MAX_CANONICAL_ORDER {
            return Err(GraphError::OrderTooLarge(n));
        }
        let mut best = u64::MAX;
        for perm in (0..n).permutations(n) {
            let mut code: u64 = 0;
            for u in 0..n {
                for v in u + 1..n {
                    // perm is new -> old: slot (u,v) reads the old pair.
                    let (a, b) = (perm[u], perm[v]);
                    code = (code << 1) | u64::from(self.edges.contains(&(a.min(b), a.max(b))));
                }
            }
            for v in 0..n {
                code = (code << 1) | u64::from(self.loops.contains(&perm[v]));
            }
            best = best.min(code);
        }
        Ok(CanonicalCode { n, bits: best })
    }
}

/// Canonical isomorphism-invariant code of a self-loop graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    pub n: usize,
    pub bits: u64,
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.n * (self.n + 1) / 2;
        write!(f, "{}:{:0width$b}", self.n, self.bits, width = width)
    }
}

/// Dense symmetric 0/1 adjacency matrix of a self-loop graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    order: usize,
    entries: Vec<u8>,
}

impl AdjacencyMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.order + j]
    }

    pub fn trace(&self) -> usize {
        (0..self.order).map(|i| usize::from(self.get(i, i))).sum()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|&x| f64::from(x)).collect()
    }
}

/// Named graph families from the equality characterizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    K1,
    K1Hat,
    K2,
    K2Tilde,
    K2Hat,
    Kn,
    KnHat,
    NK1,
    NK1Hat,
    HalfK2,
    HalfK2Tilde,
    HalfK2Hat,
    HalfK1UnionHalfK1Hat,
    KSigmaHatUnionIsolated { sigma: usize },
    Other,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::K1 => write!(f, "K1"),
            FamilyTag::K1Hat => write!(f, "K1^"),
            FamilyTag::K2 => write!(f, "K2"),
            FamilyTag::K2Tilde => write!(f, "K2~"),
            FamilyTag::K2Hat => write!(f, "K2^"),
            FamilyTag::Kn => write!(f, "Kn"),
            FamilyTag::KnHat => write!(f, "Kn^"),
            FamilyTag::NK1 => write!(f, "nK1"),
            FamilyTag::NK1Hat => write!(f, "nK1^"),
            FamilyTag::HalfK2 => write!(f, "(n/2)K2"),
            FamilyTag::HalfK2Tilde => write!(f, "(n/2)K2~"),
            FamilyTag::HalfK2Hat => write!(f, "(n/2)K2^"),
            FamilyTag::HalfK1UnionHalfK1Hat => write!(f, "(n/2)K1+(n/2)K1^"),
            FamilyTag::KSigmaHatUnionIsolated { sigma } => {
                write!(f, "Ksigma^+isolated(sigma={sigma})")
            }
            FamilyTag::Other => write!(f, "other"),
        }
    }
}

/// Builds the named family of order `n`, components labeled in contiguous
/// blocks starting at vertex 0.
pub fn make_family(tag: FamilyTag, n: usize) -> Result<SelfLoopGraph, GraphError> {
    let fail = || GraphError::IncompatibleOrder {
        family: tag.to_string(),
        n,
    };
    let need = |cond: bool| if cond { Ok(()) } else { Err(fail()) };
    match tag {
        FamilyTag::K1 => {
            need(n == 1)?;
            SelfLoopGraph::from_edge_list(1, &[], &[])
        }
        FamilyTag::K1Hat => {
            need(n == 1)?;
            SelfLoopGraph::from_edge_list(1, &[], &[0])
        }
        FamilyTag::K2 => {
            need(n == 2)?;
            SelfLoopGraph::from_edge_list(2, &[(0, 1)], &[])
        }
        FamilyTag::K2Tilde => {
            need(n == 2)?;
            SelfLoopGraph::from_edge_list(2, &[(0, 1)], &[0])
        }
        FamilyTag::K2Hat => {
            need(n == 2)?;
            SelfLoopGraph::from_edge_list(2, &[(0, 1)], &[0, 1])
        }
        FamilyTag::Kn => {
            need(n >= 1)?;
            SelfLoopGraph::from_edge_list(n, &all_pairs(n), &[])
        }
        FamilyTag::KnHat => {
            need(n >= 1)?;
            SelfLoopGraph::from_edge_list(n, &all_pairs(n), &(0..n).collect::<Vec<_>>())
        }
        FamilyTag::NK1 => {
            need(n >= 1)?;
            SelfLoopGraph::from_edge_list(n, &[], &[])
        }
        FamilyTag::NK1Hat => {
            need(n >= 1)?;
            SelfLoopGraph::from_edge_list(n, &[], &(0..n).collect::<Vec<_>>())
        }
        FamilyTag::HalfK2 => {
            need(n >= 2 && n % 2 == 0)?;
            SelfLoopGraph::from_edge_list(n, &matching(n), &[])
        }
        FamilyTag::HalfK2Tilde => {
            need(n >= 2 && n % 2 == 0)?;
            let loops: Vec<usize> = (0..n).step_by(2).collect();
            SelfLoopGraph::from_edge_list(n, &matching(n), &loops)
        }
        FamilyTag::HalfK2Hat => {
            need(n >= 2 && n % 2 == 0)?;
            SelfLoopGraph::from_edge_list(n, &matching(n), &(0..n).collect::<Vec<_>>())
        }
        FamilyTag::HalfK1UnionHalfK1Hat => {
            need(n >= 2 && n % 2 == 0)?;
            let loops: Vec<usize> = (n / 2..n).collect();
            SelfLoopGraph::from_edge_list(n, &[], &loops)
        }
        FamilyTag::KSigmaHatUnionIsolated { sigma } => {
            need(sigma <= n)?;
            let edges: Vec<(usize, usize)> = all_pairs(sigma);
            SelfLoopGraph::from_edge_list(n, &edges, &(0..sigma).collect::<Vec<_>>())
        }
        FamilyTag::Other => Err(fail()),
    }
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

fn matching(n: usize) -> Vec<(usize, usize)> {
    (0..n / 2).map(|k| (2 * k, 2 * k + 1)).collect()
}
