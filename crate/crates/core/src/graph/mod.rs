//! Weighted service graphs over hidden-service ids.
//!
//! A single representation serves directed (DSG) and undirected (USG)
//! graphs. Vertices are kept in lexicographic order, so vertex indices
//! double as deterministic tie-breakers everywhere else in the crate.
//! Edges carry a positive integer weight: the number of hyperlinks
//! flattened onto them.

mod build;
mod components;
mod io;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use build::{build_dsg, intersect, is_onion_id, to_usg, union, LinkScope};
pub use components::{giant_wcc, strong_components, weak_components};
pub use io::{read_graph, write_graph};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graphs mix directed and undirected inputs")]
    MixedDirectedness,
    #[error("operation requires a directed graph")]
    ExpectedDirected,
    #[error("operation requires at least {needed} graphs, got {got}")]
    TooFewGraphs { needed: usize, got: usize },
    #[error("empty graph")]
    EmptyGraph,
    #[error("page records span several snapshots ({0} and {1})")]
    MixedSnapshots(String, String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("edge `{0}` -> `{1}` has zero weight")]
    ZeroWeight(String, String),
    #[error("duplicate edge `{0}` -> `{1}`")]
    DuplicateEdge(String, String),
    #[error("graph file line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Directedness {
    Directed,
    Undirected,
}

impl Directedness {
    pub fn is_directed(self) -> bool {
        self == Directedness::Directed
    }
}

/// Edge between vertex indices. Undirected edges have `source < target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub weight: u64,
}

/// Edge keyed by endpoint ids; the matching key for cross-graph algebra.
pub type EdgeKey = (String, String);

#[derive(Debug, Clone)]
pub struct ServiceGraph {
    directedness: Directedness,
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Edge>,
    out_adj: Vec<Vec<(usize, u64)>>,
    in_adj: Vec<Vec<(usize, u64)>>,
}

// Everything else is derived from these three.
impl PartialEq for ServiceGraph {
    fn eq(&self, other: &Self) -> bool {
        self.directedness == other.directedness
            && self.vertices == other.vertices
            && self.edges == other.edges
    }
}

impl Eq for ServiceGraph {}

impl ServiceGraph {
    /// Builds a graph from named edges plus optional extra (possibly
    /// isolated) vertices. Rejects self-loops, zero weights and repeated
    /// edges; for undirected graphs `(a, b)` and `(b, a)` are the same edge.
    pub fn from_edges<I, E>(
        directedness: Directedness,
        vertices: I,
        edges: E,
    ) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = String>,
        E: IntoIterator<Item = (String, String, u64)>,
    {
        let mut vset: BTreeSet<String> = vertices.into_iter().collect();
        let mut emap: BTreeMap<EdgeKey, u64> = BTreeMap::new();
        for (s, t, w) in edges {
            if s == t {
                return Err(GraphError::SelfLoop(s));
            }
            if w == 0 {
                return Err(GraphError::ZeroWeight(s, t));
            }
            vset.insert(s.clone());
            vset.insert(t.clone());
            let key = canonical(directedness, s, t);
            if emap.insert(key.clone(), w).is_some() {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
        }
        Ok(Self::from_canonical(directedness, vset, emap))
    }

    /// Assumes keys are canonical and free of self-loops.
    pub(crate) fn from_canonical(
        directedness: Directedness,
        mut vertices: BTreeSet<String>,
        edges: BTreeMap<EdgeKey, u64>,
    ) -> Self {
        for (s, t) in edges.keys() {
            if !vertices.contains(s) {
                vertices.insert(s.clone());
            }
            if !vertices.contains(t) {
                vertices.insert(t.clone());
            }
        }
        let vertices: Vec<String> = vertices.into_iter().collect();
        let index: HashMap<String, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let n = vertices.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        let mut edge_list = Vec::with_capacity(edges.len());
        for ((s, t), w) in &edges {
            let (si, ti) = (index[s], index[t]);
            edge_list.push(Edge {
                source: si,
                target: ti,
                weight: *w,
            });
            out_adj[si].push((ti, *w));
            in_adj[ti].push((si, *w));
            if !directedness.is_directed() {
                out_adj[ti].push((si, *w));
                in_adj[si].push((ti, *w));
            }
        }
        for adj in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            adj.sort_unstable();
        }
        // BTreeMap order on names == order on indices, so edge_list is sorted.
        ServiceGraph {
            directedness,
            vertices,
            index,
            edges: edge_list,
            out_adj,
            in_adj,
        }
    }

    pub fn empty(directedness: Directedness) -> Self {
        Self::from_canonical(directedness, BTreeSet::new(), BTreeMap::new())
    }

    pub fn directedness(&self) -> Directedness {
        self.directedness
    }

    pub fn is_directed(&self) -> bool {
        self.directedness.is_directed()
    }

    /// Vertex count N.
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// Edge count M.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex(&self, idx: usize) -> &str {
        &self.vertices[idx]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Out-neighbors with weights; for undirected graphs, all neighbors.
    pub fn out_neighbors(&self, v: usize) -> &[(usize, u64)] {
        &self.out_adj[v]
    }

    /// In-neighbors with weights; for undirected graphs, all neighbors.
    pub fn in_neighbors(&self, v: usize) -> &[(usize, u64)] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_adj[v].len()
    }

    /// in + out for directed graphs, neighbor count for undirected ones.
    pub fn degree(&self, v: usize) -> usize {
        if self.is_directed() {
            self.out_adj[v].len() + self.in_adj[v].len()
        } else {
            self.out_adj[v].len()
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.weight(u, v).is_some()
    }

    /// Weight of `u -> v` (either orientation for undirected graphs).
    pub fn weight(&self, u: usize, v: usize) -> Option<u64> {
        let adj = &self.out_adj[u];
        adj.binary_search_by_key(&v, |&(t, _)| t)
            .ok()
            .map(|i| adj[i].1)
    }

    /// Edges keyed by endpoint ids, canonical for undirected graphs.
    pub fn edge_map(&self) -> BTreeMap<EdgeKey, u64> {
        self.edges
            .iter()
            .map(|e| {
                (
                    (self.vertices[e.source].clone(), self.vertices[e.target].clone()),
                    e.weight,
                )
            })
            .collect()
    }

    /// Subgraph induced by the vertices with `keep[v] == true`.
    pub fn induced_subgraph(&self, keep: &[bool]) -> ServiceGraph {
        let vertices: BTreeSet<String> = self
            .vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| keep[*i])
            .map(|(_, v)| v.clone())
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| keep[e.source] && keep[e.target])
            .map(|e| {
                (
                    (self.vertices[e.source].clone(), self.vertices[e.target].clone()),
                    e.weight,
                )
            })
            .collect();
        ServiceGraph::from_canonical(self.directedness, vertices, edges)
    }

    /// Sum of edge weights.
    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.weight).sum()
    }
}

pub(crate) fn canonical(directedness: Directedness, s: String, t: String) -> EdgeKey {
    if !directedness.is_directed() && t < s {
        (t, s)
    } else {
        (s, t)
    }
}
