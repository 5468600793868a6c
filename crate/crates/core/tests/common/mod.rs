#![allow(dead_code)]

use hsgraph::graph::{Directedness, ServiceGraph};
use hsgraph_oracle::{Graph, WeightedEdges};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn name(i: usize) -> String {
    format!("v{i:03}")
}

/// Oracle view of a graph; vertex indices follow the sorted ids.
pub fn to_oracle(g: &ServiceGraph) -> Graph {
    Graph {
        n: g.n(),
        directed: g.is_directed(),
        edges: g.edges().iter().map(|e| (e.source, e.target)).collect(),
    }
}

/// Random graph with 1..=max_n vertices and an edge probability in [lo, hi].
pub fn random_graph(seed: u64, d: Directedness, max_n: usize, lo: f64, hi: f64) -> ServiceGraph {
    let mut r = rng(seed);
    let n = r.random_range(1..=max_n);
    let p = r.random_range(lo..=hi);
    hsgraph::synth::random_graph(d, n, p, &mut r)
}

pub fn from_weighted(d: Directedness, n: usize, edges: &WeightedEdges) -> ServiceGraph {
    ServiceGraph::from_edges(
        d,
        (0..n).map(name),
        edges.iter().map(|(&(u, v), &w)| (name(u), name(v), w)),
    )
    .unwrap()
}

/// Edge map keyed by vertex names' numeric suffix.
pub fn weighted_edges(g: &ServiceGraph) -> WeightedEdges {
    g.edges()
        .iter()
        .map(|e| {
            let idx = |i: usize| g.vertex(i)[1..].parse::<usize>().unwrap();
            let (a, b) = (idx(e.source), idx(e.target));
            let key = if g.is_directed() { (a, b) } else { (a.min(b), a.max(b)) };
            (key, e.weight)
        })
        .collect()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a.is_nan() && b.is_nan()) || (a - b).abs() <= tol
}
