use super::{CommunityError, Partition};
use crate::graph::ServiceGraph;
use crate::scalar::Real;

/// Symmetrized weighted adjacency: `w'(u,v) = w(u->v) + w(v->u)` for
/// directed graphs, the edge weight for undirected ones. No self-loops.
#[derive(Debug, Clone)]
pub struct SymmetricWeights<F> {
    pub adj: Vec<Vec<(usize, F)>>,
    /// Total undirected weight m.
    pub total: F,
}

impl<F: Real> SymmetricWeights<F> {
    pub fn from_graph(g: &ServiceGraph) -> Self {
        let n = g.n();
        let mut adj: Vec<Vec<(usize, F)>> = vec![Vec::new(); n];
        let mut total = F::zero();
        if g.is_directed() {
            for e in g.edges() {
                let w = F::of_u64(e.weight);
                // a reciprocal pair is added once from the lower endpoint
                if let Some(back) = g.weight(e.target, e.source) {
                    if e.source > e.target {
                        continue;
                    }
                    let w = w + F::of_u64(back);
                    adj[e.source].push((e.target, w));
                    adj[e.target].push((e.source, w));
                    total += w;
                } else {
                    adj[e.source].push((e.target, w));
                    adj[e.target].push((e.source, w));
                    total += w;
                }
            }
        } else {
            for e in g.edges() {
                let w = F::of_u64(e.weight);
                adj[e.source].push((e.target, w));
                adj[e.target].push((e.source, w));
                total += w;
            }
        }
        for a in adj.iter_mut() {
            a.sort_by_key(|&(v, _)| v);
        }
        SymmetricWeights { adj, total }
    }

    pub fn strength(&self, v: usize) -> F {
        self.adj[v].iter().map(|&(_, w)| w).sum()
    }
}

/// Maps each graph vertex to its cluster label in `p`.
pub(crate) fn labels_for_graph(g: &ServiceGraph, p: &Partition) -> Result<Vec<usize>, CommunityError> {
    g.vertices()
        .iter()
        .map(|v| p.label_of(v).ok_or_else(|| CommunityError::Uncovered(v.clone())))
        .collect()
}

pub(crate) fn modularity_of_labels<F: Real>(w: &SymmetricWeights<F>, labels: &[usize]) -> F {
    if w.total <= F::zero() {
        return F::nan();
    }
    let k = labels.iter().max().map_or(0, |m| m + 1);
    let mut internal = vec![F::zero(); k];
    let mut strength = vec![F::zero(); k];
    for (u, adj) in w.adj.iter().enumerate() {
        for &(v, wt) in adj {
            strength[labels[u]] += wt;
            if labels[u] == labels[v] {
                internal[labels[u]] += wt;
            }
        }
    }
    let two_m = F::two() * w.total;
    internal
        .iter()
        .zip(&strength)
        .map(|(&l, &s)| l / two_m - (s / two_m) * (s / two_m))
        .sum()
}

/// Weighted modularity of `p` on the symmetrized graph (resolution 1).
/// NaN for graphs without edges.
pub fn modularity<F: Real>(g: &ServiceGraph, p: &Partition) -> Result<F, CommunityError> {
    let labels = labels_for_graph(g, p)?;
    Ok(modularity_of_labels(&SymmetricWeights::<F>::from_graph(g), &labels))
}
