//! Degree-based and triangle-based structural metrics.

use super::MetricsError;
use crate::graph::ServiceGraph;
use crate::scalar::Real;
use crate::stats::pearson;

/// M/N for directed graphs (mean in- or out-degree), 2M/N for undirected.
pub fn average_degree<F: Real>(g: &ServiceGraph) -> F {
    if g.n() == 0 {
        return F::nan();
    }
    let ends = if g.is_directed() { g.m() } else { 2 * g.m() };
    F::of_usize(ends) / F::of_usize(g.n())
}

/// Degree assortativity.
///
/// Directed: Pearson correlation over edges between the source's
/// out-degree and the target's in-degree. Undirected: Pearson correlation
/// of endpoint degrees over the doubled edge list. NaN when either side
/// has zero variance.
pub fn assortativity<F: Real>(g: &ServiceGraph) -> F {
    let mut xs = Vec::with_capacity(2 * g.m());
    let mut ys = Vec::with_capacity(2 * g.m());
    for e in g.edges() {
        if g.is_directed() {
            xs.push(F::of_usize(g.out_degree(e.source)));
            ys.push(F::of_usize(g.in_degree(e.target)));
        } else {
            let (a, b) = (F::of_usize(g.degree(e.source)), F::of_usize(g.degree(e.target)));
            xs.push(a);
            ys.push(b);
            xs.push(b);
            ys.push(a);
        }
    }
    pearson(&xs, &ys)
}

/// Out-degree centralization (directed) or degree centralization
/// (undirected). Requires N >= 3.
pub fn centralization<F: Real>(g: &ServiceGraph) -> Result<F, MetricsError> {
    let n = g.n();
    if n < 3 {
        return Err(MetricsError::TooFewVertices { needed: 3, got: n });
    }
    let deg = |v| if g.is_directed() { g.out_degree(v) } else { g.degree(v) };
    let max = (0..n).map(deg).max().unwrap_or(0);
    let sum: usize = (0..n).map(deg).sum();
    let num = F::of_usize(n * max - sum);
    let den = if g.is_directed() {
        F::of_usize((n - 1) * (n - 1))
    } else {
        F::of_usize((n - 1) * (n - 2))
    };
    Ok(num / den)
}

/// Per-vertex triangle counts over out-neighbor pairs.
#[derive(Debug, Clone)]
pub(crate) struct NeighborPairs {
    /// k(k-1): ordered pairs of distinct out-neighbors.
    pub ordered_pairs: Vec<u64>,
    /// Ordered out-neighbor pairs (u, w) with u->w or w->u.
    pub connected_pairs: Vec<u64>,
}

pub(crate) fn neighbor_pairs(g: &ServiceGraph) -> NeighborPairs {
    let n = g.n();
    let mut mark = vec![usize::MAX; n];
    let mut ordered_pairs = vec![0u64; n];
    let mut connected_pairs = vec![0u64; n];
    for v in 0..n {
        let nbrs = g.out_neighbors(v);
        let k = nbrs.len() as u64;
        ordered_pairs[v] = k * k.saturating_sub(1);
        for &(u, _) in nbrs {
            mark[u] = v;
        }
        let (mut arcs, mut mutual) = (0u64, 0u64);
        for &(u, _) in nbrs {
            for &(w, _) in g.out_neighbors(u) {
                if w != u && mark[w] == v {
                    arcs += 1;
                    if u < w && g.has_edge(w, u) {
                        mutual += 1;
                    }
                }
            }
        }
        // each unordered connected pair counts once after removing the
        // double count of reciprocated arcs; ordered pairs are twice that
        connected_pairs[v] = 2 * (arcs - mutual);
    }
    NeighborPairs {
        ordered_pairs,
        connected_pairs,
    }
}

/// Global transitivity T (directed) or clustering coefficient C
/// (undirected). NaN when no vertex has two out-neighbors.
pub fn global_transitivity<F: Real>(g: &ServiceGraph) -> F {
    let p = neighbor_pairs(g);
    let den: u64 = p.ordered_pairs.iter().sum();
    if den == 0 {
        return F::nan();
    }
    F::of_u64(p.connected_pairs.iter().sum::<u64>()) / F::of_u64(den)
}

/// Local transitivity T(v); NaN for vertices with fewer than two out-neighbors.
pub fn local_transitivity<F: Real>(g: &ServiceGraph) -> Vec<F> {
    let p = neighbor_pairs(g);
    p.ordered_pairs
        .iter()
        .zip(&p.connected_pairs)
        .map(|(&den, &num)| {
            if den == 0 {
                F::nan()
            } else {
                F::of_u64(num) / F::of_u64(den)
            }
        })
        .collect()
}
