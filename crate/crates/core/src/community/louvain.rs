use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modularity::SymmetricWeights;
use super::Partition;
use crate::graph::ServiceGraph;
use crate::scalar::Real;

pub const DEFAULT_LOUVAIN_SEED: u64 = 42;

#[derive(Debug, Clone, Copy)]
pub struct LouvainOptions {
    pub seed: u64,
    /// Smallest modularity gain that counts as an improvement.
    pub min_gain: f64,
    pub max_levels: usize,
}

impl Default for LouvainOptions {
    fn default() -> Self {
        LouvainOptions {
            seed: DEFAULT_LOUVAIN_SEED,
            min_gain: 1e-12,
            max_levels: 64,
        }
    }
}

/// One aggregation level: symmetric adjacency without self entries, plus
/// the internal weight each super-node carries (counted in both directions).
struct Level<F> {
    adj: Vec<Vec<(usize, F)>>,
    self_loop: Vec<F>,
}

impl<F: Real> Level<F> {
    fn n(&self) -> usize {
        self.adj.len()
    }

    fn strength(&self, v: usize) -> F {
        self.self_loop[v] + self.adj[v].iter().map(|&(_, w)| w).sum::<F>()
    }
}

/// Local moving on one level. Returns the community of each node and
/// whether any node moved.
fn local_moving<F: Real>(level: &Level<F>, two_m: F, min_gain: F, rng: &mut ChaCha8Rng) -> (Vec<usize>, bool) {
    let n = level.n();
    let k: Vec<F> = (0..n).map(|v| level.strength(v)).collect();
    let mut comm: Vec<usize> = (0..n).collect();
    let mut tot: Vec<F> = k.clone();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    let mut link = vec![F::zero(); n];
    let mut is_touched = vec![false; n];
    let mut touched: Vec<usize> = Vec::new();
    // gains below are in units of m * dQ
    let threshold = min_gain * two_m / F::two();
    let mut moved_any = false;
    loop {
        let mut moved = false;
        for &v in &order {
            let old = comm[v];
            for &(u, w) in &level.adj[v] {
                let c = comm[u];
                if !is_touched[c] {
                    is_touched[c] = true;
                    touched.push(c);
                }
                link[c] += w;
            }
            tot[old] -= k[v];
            // gain of joining c, up to a positive factor common to all c
            let gain = |c: usize, link_c: F| link_c - tot[c] * k[v] / two_m;
            let mut best = old;
            let mut best_gain = gain(old, link[old]);
            for &c in &touched {
                let g = gain(c, link[c]);
                if g > best_gain + threshold {
                    best = c;
                    best_gain = g;
                }
            }
            tot[best] += k[v];
            comm[v] = best;
            if best != old {
                moved = true;
                moved_any = true;
            }
            for &c in &touched {
                link[c] = F::zero();
                is_touched[c] = false;
            }
            touched.clear();
        }
        if !moved {
            break;
        }
    }
    (comm, moved_any)
}

fn renumber(comm: &mut [usize]) -> usize {
    let mut map = vec![usize::MAX; comm.len()];
    let mut next = 0;
    for c in comm.iter_mut() {
        if map[*c] == usize::MAX {
            map[*c] = next;
            next += 1;
        }
        *c = map[*c];
    }
    next
}

fn aggregate<F: Real>(level: &Level<F>, comm: &[usize], k: usize) -> Level<F> {
    let mut self_loop = vec![F::zero(); k];
    let mut maps: Vec<std::collections::BTreeMap<usize, F>> = vec![Default::default(); k];
    for v in 0..level.n() {
        let cv = comm[v];
        self_loop[cv] += level.self_loop[v];
        for &(u, w) in &level.adj[v] {
            let cu = comm[u];
            if cu == cv {
                self_loop[cv] += w;
            } else {
                *maps[cv].entry(cu).or_insert(F::zero()) += w;
            }
        }
    }
    Level {
        adj: maps.into_iter().map(|m| m.into_iter().collect()).collect(),
        self_loop,
    }
}

/// Weighted Louvain on the symmetrized graph. Deterministic for a fixed
/// seed; labels are canonical.
pub fn louvain<F: Real>(g: &ServiceGraph, opts: &LouvainOptions) -> Partition {
    let sym = SymmetricWeights::<F>::from_graph(g);
    let n = g.n();
    let mut membership: Vec<usize> = (0..n).collect();
    if sym.total > F::zero() {
        let two_m = F::two() * sym.total;
        let min_gain = F::of(opts.min_gain);
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut level = Level {
            adj: sym.adj,
            self_loop: vec![F::zero(); n],
        };
        for _ in 0..opts.max_levels {
            let (mut comm, moved) = local_moving(&level, two_m, min_gain, &mut rng);
            if !moved {
                break;
            }
            let k = renumber(&mut comm);
            for m in membership.iter_mut() {
                *m = comm[*m];
            }
            level = aggregate(&level, &comm, k);
        }
    }
    Partition::from_sorted(g.vertices().to_vec(), &membership)
}
