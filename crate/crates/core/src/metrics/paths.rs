//! All-sources unweighted shortest-path sweep.
//!
//! One BFS per source yields distances and shortest-path counts; from
//! those the sweep accumulates Brandes dependencies, distances into each
//! vertex (closeness), eccentricities, global distance statistics and
//! per-vertex efficiency contributions. Sources are processed in fixed
//! blocks whose partial results are merged in block order, so the output
//! does not depend on the number of worker threads.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::graph::ServiceGraph;
use crate::scalar::Real;

const UNREACHED: u32 = u32::MAX;
const BLOCK: usize = 16;

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct SweepOptions {
    pub betweenness: bool,
    pub efficiency: bool,
}

#[derive(Debug, Clone)]
pub(crate) struct Sweep<F> {
    /// Brandes betweenness over ordered (s, t) pairs.
    pub betweenness: Vec<F>,
    /// Sum over sources u of dist(u, v), finite pairs only.
    pub into_dist_sum: Vec<u64>,
    /// Number of sources u != v with finite dist(u, v).
    pub into_reach: Vec<u64>,
    /// Max finite dist(v, u).
    pub eccentricity: Vec<u32>,
    /// Sum over out-neighbor pairs u != w of 1 / dist(u, w).
    pub efficiency_sum: Vec<F>,
    pub finite_pairs: u64,
    pub dist_total: u64,
    pub inverse_total: F,
    pub diameter: u32,
}

impl<F: Real> Sweep<F> {
    fn zero(n: usize, opts: SweepOptions) -> Self {
        Sweep {
            betweenness: if opts.betweenness { vec![F::zero(); n] } else { Vec::new() },
            into_dist_sum: vec![0; n],
            into_reach: vec![0; n],
            eccentricity: vec![0; n],
            efficiency_sum: if opts.efficiency { vec![F::zero(); n] } else { Vec::new() },
            finite_pairs: 0,
            dist_total: 0,
            inverse_total: F::zero(),
            diameter: 0,
        }
    }

    fn merge(&mut self, other: Sweep<F>) {
        for (a, b) in self.betweenness.iter_mut().zip(other.betweenness) {
            *a += b;
        }
        for (a, b) in self.efficiency_sum.iter_mut().zip(other.efficiency_sum) {
            *a += b;
        }
        for (a, b) in self.into_dist_sum.iter_mut().zip(other.into_dist_sum) {
            *a += b;
        }
        for (a, b) in self.into_reach.iter_mut().zip(other.into_reach) {
            *a += b;
        }
        for (a, b) in self.eccentricity.iter_mut().zip(other.eccentricity) {
            *a = (*a).max(b);
        }
        self.finite_pairs += other.finite_pairs;
        self.dist_total += other.dist_total;
        self.inverse_total += other.inverse_total;
        self.diameter = self.diameter.max(other.diameter);
    }
}

struct Scratch<F> {
    dist: Vec<u32>,
    sigma: Vec<F>,
    delta: Vec<F>,
    order: Vec<usize>,
    queue: VecDeque<usize>,
}

impl<F: Real> Scratch<F> {
    fn new(n: usize) -> Self {
        Scratch {
            dist: vec![UNREACHED; n],
            sigma: vec![F::zero(); n],
            delta: vec![F::zero(); n],
            order: Vec::with_capacity(n),
            queue: VecDeque::with_capacity(n),
        }
    }

    fn bfs(&mut self, g: &ServiceGraph, s: usize) {
        for &v in &self.order {
            self.dist[v] = UNREACHED;
            self.sigma[v] = F::zero();
            self.delta[v] = F::zero();
        }
        self.order.clear();
        self.dist[s] = 0;
        self.sigma[s] = F::one();
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            self.order.push(v);
            let dv = self.dist[v];
            for &(w, _) in g.out_neighbors(v) {
                if self.dist[w] == UNREACHED {
                    self.dist[w] = dv + 1;
                    self.queue.push_back(w);
                }
                if self.dist[w] == dv + 1 {
                    let sv = self.sigma[v];
                    self.sigma[w] += sv;
                }
            }
        }
    }
}

fn sweep_source<F: Real>(g: &ServiceGraph, s: usize, opts: SweepOptions, sc: &mut Scratch<F>, acc: &mut Sweep<F>) {
    sc.bfs(g, s);
    let mut ecc = 0;
    for &t in &sc.order[1..] {
        let d = sc.dist[t];
        ecc = ecc.max(d);
        acc.into_dist_sum[t] += u64::from(d);
        acc.into_reach[t] += 1;
        acc.finite_pairs += 1;
        acc.dist_total += u64::from(d);
        acc.inverse_total += F::one() / F::of_u64(u64::from(d));
    }
    acc.eccentricity[s] = ecc;
    acc.diameter = acc.diameter.max(ecc);

    if opts.betweenness {
        for &w in sc.order.iter().rev() {
            let dw = sc.dist[w];
            if dw == 0 {
                continue;
            }
            let coeff = (F::one() + sc.delta[w]) / sc.sigma[w];
            for &(v, _) in g.in_neighbors(w) {
                if sc.dist[v] != UNREACHED && sc.dist[v] + 1 == dw {
                    let sv = sc.sigma[v];
                    sc.delta[v] += sv * coeff;
                }
            }
            acc.betweenness[w] += sc.delta[w];
        }
    }

    if opts.efficiency {
        // s is an out-neighbor of every v in in_neighbors(s); add the s-row
        // of v's neighbor-pair sum.
        for &(v, _) in g.in_neighbors(s) {
            let mut part = F::zero();
            for &(w, _) in g.out_neighbors(v) {
                if w != s && sc.dist[w] != UNREACHED {
                    part += F::one() / F::of_u64(u64::from(sc.dist[w]));
                }
            }
            acc.efficiency_sum[v] += part;
        }
    }
}

pub(crate) fn sweep<F: Real>(g: &ServiceGraph, opts: SweepOptions) -> Sweep<F> {
    let n = g.n();
    let mut total = Sweep::zero(n, opts);
    let window = BLOCK * rayon::current_num_threads().max(1) * 2;
    let mut start = 0;
    while start < n {
        let end = (start + window).min(n);
        let blocks: Vec<Sweep<F>> = (start..end)
            .collect::<Vec<_>>()
            .par_chunks(BLOCK)
            .map(|sources| {
                let mut acc = Sweep::zero(n, opts);
                let mut sc = Scratch::new(n);
                for &s in sources {
                    sweep_source(g, s, opts, &mut sc, &mut acc);
                }
                acc
            })
            .collect();
        for b in blocks {
            total.merge(b);
        }
        start = end;
    }
    total
}

/// Unweighted single-source distances; `None` marks unreachable vertices.
pub fn bfs_distances(g: &ServiceGraph, source: usize) -> Vec<Option<u32>> {
    let mut sc = Scratch::<f64>::new(g.n());
    sc.bfs(g, source);
    sc.dist
        .iter()
        .map(|&d| (d != UNREACHED).then_some(d))
        .collect()
}
