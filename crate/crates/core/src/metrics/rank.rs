//! PageRank and HITS by power iteration.

use crate::graph::ServiceGraph;
use crate::scalar::{stable_sum, Real};

pub const DEFAULT_DAMPING: f64 = 0.85;
pub const DEFAULT_TOLERANCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 10_000;

#[derive(Debug, Clone, Copy)]
pub struct RankOptions {
    pub damping: f64,
    pub tolerance: f64,
    /// Use edge weights as transition/adjacency strengths.
    pub weighted: bool,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions {
            damping: DEFAULT_DAMPING,
            tolerance: DEFAULT_TOLERANCE,
            weighted: true,
        }
    }
}

fn edge_weight<F: Real>(w: u64, weighted: bool) -> F {
    if weighted {
        F::of_u64(w)
    } else {
        F::one()
    }
}

/// PageRank with uniform teleport; dangling mass is spread uniformly.
/// Converges when the L1 change between iterates drops below the tolerance.
pub fn pagerank<F: Real>(g: &ServiceGraph, opts: RankOptions) -> Vec<F> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let nf = F::of_usize(n);
    let d = F::of(opts.damping);
    let tol = F::of(opts.tolerance);
    let out_strength: Vec<F> = (0..n)
        .map(|v| stable_sum(g.out_neighbors(v).iter().map(|&(_, w)| edge_weight::<F>(w, opts.weighted))))
        .collect();
    let mut rank = vec![F::one() / nf; n];
    let mut next = vec![F::zero(); n];
    for _ in 0..MAX_ITERATIONS {
        let dangling = stable_sum((0..n).filter(|&v| out_strength[v] == F::zero()).map(|v| rank[v]));
        let base = (F::one() - d) / nf + d * dangling / nf;
        for (v, slot) in next.iter_mut().enumerate() {
            let inflow = stable_sum(g.in_neighbors(v).iter().map(|&(u, w)| {
                rank[u] * edge_weight::<F>(w, opts.weighted) / out_strength[u]
            }));
            *slot = base + d * inflow;
        }
        let total = stable_sum(next.iter().copied());
        for x in next.iter_mut() {
            *x /= total;
        }
        let change = stable_sum(rank.iter().zip(&next).map(|(a, b)| (*a - *b).abs()));
        std::mem::swap(&mut rank, &mut next);
        if change < tol {
            break;
        }
    }
    rank
}

/// HITS hub and authority scores, each normalized to unit Euclidean norm.
/// Graphs without edges get uniform vectors.
#[derive(Debug, Clone)]
pub struct Hits<F> {
    pub hubs: Vec<F>,
    pub authorities: Vec<F>,
}

fn normalize<F: Real>(v: &mut [F]) -> F {
    let norm = stable_sum(v.iter().map(|x| *x * *x)).sqrt();
    if norm > F::zero() {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    norm
}

pub fn hits<F: Real>(g: &ServiceGraph, opts: RankOptions) -> Hits<F> {
    let n = g.n();
    if n == 0 {
        return Hits {
            hubs: Vec::new(),
            authorities: Vec::new(),
        };
    }
    if g.m() == 0 {
        let u = F::one() / F::of_usize(n).sqrt();
        return Hits {
            hubs: vec![u; n],
            authorities: vec![u; n],
        };
    }
    let tol = F::of(opts.tolerance);
    let mut hubs = vec![F::one(); n];
    normalize(&mut hubs);
    let mut auth = vec![F::zero(); n];
    for _ in 0..MAX_ITERATIONS {
        let mut new_auth: Vec<F> = (0..n)
            .map(|v| stable_sum(g.in_neighbors(v).iter().map(|&(u, w)| hubs[u] * edge_weight::<F>(w, opts.weighted))))
            .collect();
        normalize(&mut new_auth);
        let mut new_hubs: Vec<F> = (0..n)
            .map(|v| stable_sum(g.out_neighbors(v).iter().map(|&(t, w)| new_auth[t] * edge_weight::<F>(w, opts.weighted))))
            .collect();
        normalize(&mut new_hubs);
        let change = stable_sum(hubs.iter().zip(&new_hubs).map(|(a, b)| (*a - *b).abs()))
            + stable_sum(auth.iter().zip(&new_auth).map(|(a, b)| (*a - *b).abs()));
        hubs = new_hubs;
        auth = new_auth;
        if change < tol {
            break;
        }
    }
    Hits {
        hubs,
        authorities: auth,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Directedness;

    fn directed(edges: &[(&str, &str, u64)]) -> ServiceGraph {
        ServiceGraph::from_edges(
            Directedness::Directed,
            [],
            edges.iter().map(|(s, t, w)| (s.to_string(), t.to_string(), *w)),
        )
        .unwrap()
    }

    #[test]
    fn symmetric_cycle_is_uniform() {
        let g = directed(&[("a", "b", 1), ("b", "c", 1), ("c", "d", 1), ("d", "e", 1), ("e", "a", 1)]);
        let pr = pagerank::<f64>(&g, RankOptions::default());
        for p in pr {
            assert!((p - 0.2).abs() < 1e-9);
        }
    }

    #[test]
    fn pagerank_sums_to_one_with_dangling() {
        let g = directed(&[("a", "b", 3), ("a", "c", 1), ("c", "b", 1)]);
        let pr = pagerank::<f64>(&g, RankOptions::default());
        assert!((pr.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(pr[1] > pr[2] && pr[2] > pr[0]);
    }

    #[test]
    fn pagerank_hand_computed_two_nodes() {
        // a -> b, b dangling: fixed point solves
        // pa = 0.075 + 0.425 pb, pb = 0.075 + 0.85 pa + 0.425 pb
        let g = directed(&[("a", "b", 1)]);
        let pr = pagerank::<f64>(&g, RankOptions::default());
        // exact: pa + pb = 1, pa = 0.075 + 0.425 pb  =>  pa = (0.075 + 0.425) / 1.425
        let pa = 0.5 / 1.425;
        assert!((pr[0] - pa).abs() < 1e-12);
        assert!((pr[1] - (1.0 - pa)).abs() < 1e-12);
    }

    #[test]
    fn unweighted_mode_ignores_weights() {
        let g = directed(&[("a", "b", 9), ("a", "c", 1)]);
        let pr = pagerank::<f64>(&g, RankOptions { weighted: false, ..Default::default() });
        assert!((pr[1] - pr[2]).abs() < 1e-12);
        let pr = pagerank::<f64>(&g, RankOptions::default());
        assert!(pr[1] > pr[2]);
    }

    #[test]
    fn hub_with_sinks() {
        let g = directed(&[("hub", "s1", 1), ("hub", "s2", 1), ("hub", "s3", 1)]);
        let h = hits::<f64>(&g, RankOptions::default());
        assert!((h.hubs[0] - 1.0).abs() < 1e-12);
        for i in 1..4 {
            assert!(h.hubs[i].abs() < 1e-12);
            assert!((h.authorities[i] - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        }
        assert!(h.authorities[0].abs() < 1e-12);
    }

    #[test]
    fn hits_unit_norm() {
        let g = directed(&[("a", "b", 2), ("b", "c", 1), ("c", "a", 1), ("a", "c", 5)]);
        let h = hits::<f64>(&g, RankOptions::default());
        let nh: f64 = h.hubs.iter().map(|x| x * x).sum();
        let na: f64 = h.authorities.iter().map(|x| x * x).sum();
        assert!((nh - 1.0).abs() < 1e-12 && (na - 1.0).abs() < 1e-12);
    }
}
