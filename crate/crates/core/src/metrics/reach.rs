//! Fraction of the giant component within one hop of the top hubs.

use std::collections::BTreeSet;

use super::MetricsError;
use crate::graph::{giant_wcc, ServiceGraph};
use crate::scalar::Real;

pub const DEFAULT_TOP_HUBS: usize = 25;

/// Cumulative coverage of the giant weakly connected component by the
/// top-`k` hubs and their out-neighborhoods.
///
/// Hubs are ranked by out-degree (directed) or degree (undirected), ties
/// broken by vertex id. Entry `i` is the share of the component covered by
/// the first `i + 1` hubs. The curve has `min(k, N_giant)` entries.
pub fn hub_reach_curve<F: Real>(g: &ServiceGraph, k: usize) -> Result<Vec<F>, MetricsError> {
    if k == 0 {
        return Err(MetricsError::InvalidArgument("k must be positive".into()));
    }
    let giant = giant_wcc(g)?;
    let n = giant.n();
    let mut order: Vec<usize> = (0..n).collect();
    // stable sort keeps lexicographic (index) order among equal degrees
    order.sort_by_key(|&v| std::cmp::Reverse(giant.out_degree(v)));
    let mut covered = BTreeSet::new();
    let total = F::of_usize(n);
    Ok(order
        .into_iter()
        .take(k)
        .map(|h| {
            covered.insert(h);
            covered.extend(giant.out_neighbors(h).iter().map(|&(t, _)| t));
            F::of_usize(covered.len()) / total
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Directedness, GraphError};

    fn directed(edges: &[(&str, &str)]) -> ServiceGraph {
        ServiceGraph::from_edges(
            Directedness::Directed,
            [],
            edges.iter().map(|(s, t)| (s.to_string(), t.to_string(), 1)),
        )
        .unwrap()
    }

    #[test]
    fn out_star_covers_everything() {
        let g = directed(&[("h", "a"), ("h", "b"), ("h", "c")]);
        let c = hub_reach_curve::<f64>(&g, 25).unwrap();
        assert_eq!(c[0], 1.0);
        // k > N truncates
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn two_half_hubs() {
        // each hub covers itself + 2 leaves of 6; joined by a single leaf edge
        let g = directed(&[("h1", "a"), ("h1", "b"), ("h2", "c"), ("h2", "d"), ("a", "c")]);
        let c = hub_reach_curve::<f64>(&g, 2).unwrap();
        assert_eq!(c, vec![0.5, 1.0]);
    }

    #[test]
    fn restricted_to_giant_component() {
        let g = directed(&[("h", "a"), ("h", "b"), ("h", "c"), ("x", "y")]);
        let c = hub_reach_curve::<f64>(&g, 1).unwrap();
        assert_eq!(c, vec![1.0]);
    }

    #[test]
    fn errors() {
        let empty = ServiceGraph::empty(Directedness::Directed);
        assert!(matches!(
            hub_reach_curve::<f64>(&empty, 3),
            Err(MetricsError::Graph(GraphError::EmptyGraph))
        ));
        assert!(hub_reach_curve::<f64>(&directed(&[("a", "b")]), 0).is_err());
    }
}
