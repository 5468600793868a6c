//! Brute-force reference implementations over plain edge lists.
//!
//! Everything here favours obviousness over speed: dense matrices,
//! Floyd-Warshall, exhaustive enumeration. Vertices are `0..n`.

use std::collections::{BTreeMap, BTreeSet};

/// Edge list with unit semantics; undirected edges are listed once.
#[derive(Debug, Clone)]
pub struct Graph {
    pub n: usize,
    pub directed: bool,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut a = vec![vec![false; self.n]; self.n];
        for &(u, v) in &self.edges {
            a[u][v] = true;
            if !self.directed {
                a[v][u] = true;
            }
        }
        a
    }

    pub fn out_neighbors(&self, v: usize) -> Vec<usize> {
        let a = self.adjacency();
        (0..self.n).filter(|&w| a[v][w]).collect()
    }
}

/// All-pairs hop distances by Floyd-Warshall; `None` when unreachable.
pub fn distances(g: &Graph) -> Vec<Vec<Option<u32>>> {
    let n = g.n;
    let a = g.adjacency();
    let mut d = vec![vec![None; n]; n];
    for u in 0..n {
        d[u][u] = Some(0);
        for v in 0..n {
            if a[u][v] && u != v {
                d[u][v] = Some(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i][k] else { continue };
            for j in 0..n {
                if let Some(kj) = d[k][j] {
                    let via = ik + kj;
                    if d[i][j].is_none_or(|cur| via < cur) {
                        d[i][j] = Some(via);
                    }
                }
            }
        }
    }
    d
}

/// Reflexive-transitive closure.
pub fn closure(g: &Graph) -> Vec<Vec<bool>> {
    distances(g)
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.is_some()).collect())
        .collect()
}

/// Number of shortest paths between every ordered pair, counted by summing
/// over predecessors in increasing distance order.
pub fn path_counts(g: &Graph, d: &[Vec<Option<u32>>]) -> Vec<Vec<f64>> {
    let n = g.n;
    let a = g.adjacency();
    let mut sigma = vec![vec![0.0; n]; n];
    for s in 0..n {
        let mut order: Vec<usize> = (0..n).filter(|&t| d[s][t].is_some()).collect();
        order.sort_by_key(|&t| d[s][t]);
        for &t in &order {
            if t == s {
                sigma[s][t] = 1.0;
                continue;
            }
            let dt = d[s][t].unwrap();
            sigma[s][t] = (0..n)
                .filter(|&u| a[u][t] && u != t && d[s][u] == Some(dt - 1))
                .map(|u| sigma[s][u])
                .sum();
        }
    }
    sigma
}

/// Betweenness over ordered pairs (s, t), s != v != t, unnormalised.
pub fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.n;
    let d = distances(g);
    let sigma = path_counts(g, &d);
    let mut bc = vec![0.0; n];
    for (v, b) in bc.iter_mut().enumerate() {
        for s in 0..n {
            for t in 0..n {
                if s == t || s == v || t == v {
                    continue;
                }
                let (Some(st), Some(sv), Some(vt)) = (d[s][t], d[s][v], d[v][t]) else {
                    continue;
                };
                if sv + vt == st {
                    *b += sigma[s][v] * sigma[v][t] / sigma[s][t];
                }
            }
        }
    }
    bc
}

/// Closeness from distances into v, scaled by the share of vertices reaching v.
pub fn closeness(g: &Graph) -> Vec<f64> {
    let n = g.n;
    let d = distances(g);
    (0..n)
        .map(|v| {
            let into: Vec<u32> = (0..n).filter(|&u| u != v).filter_map(|u| d[u][v]).collect();
            let r = into.len() as f64;
            let sum: u32 = into.iter().sum();
            if into.is_empty() || n < 2 {
                0.0
            } else {
                (r / (n - 1) as f64) * (r / sum as f64)
            }
        })
        .collect()
}

/// Largest finite distance out of each vertex.
pub fn eccentricity(g: &Graph) -> Vec<u32> {
    distances(g)
        .iter()
        .map(|row| row.iter().flatten().copied().max().unwrap_or(0))
        .collect()
}

/// Mean of 1/d(u, w) over ordered pairs of distinct out-neighbors, using
/// whole-graph distances. NaN below two out-neighbors.
pub fn local_efficiency(g: &Graph) -> Vec<f64> {
    let d = distances(g);
    (0..g.n)
        .map(|v| {
            let nb = g.out_neighbors(v);
            let k = nb.len();
            if k < 2 {
                return f64::NAN;
            }
            let mut s = 0.0;
            for &u in &nb {
                for &w in &nb {
                    if u != w {
                        if let Some(x) = d[u][w] {
                            s += 1.0 / x as f64;
                        }
                    }
                }
            }
            s / (k * (k - 1)) as f64
        })
        .collect()
}

/// Share of ordered out-neighbor pairs (u, w) joined by an edge in either
/// direction. NaN below two out-neighbors.
pub fn local_transitivity(g: &Graph) -> Vec<f64> {
    let a = g.adjacency();
    (0..g.n)
        .map(|v| {
            let nb = g.out_neighbors(v);
            let k = nb.len();
            if k < 2 {
                return f64::NAN;
            }
            let mut c = 0usize;
            for &u in &nb {
                for &w in &nb {
                    if u != w && (a[u][w] || a[w][u]) {
                        c += 1;
                    }
                }
            }
            c as f64 / (k * (k - 1)) as f64
        })
        .collect()
}

/// (1/(N(N-1))) Σ_{u≠v} 1/d(u,v).
pub fn global_efficiency(g: &Graph) -> f64 {
    let n = g.n;
    let d = distances(g);
    let mut s = 0.0;
    for u in 0..n {
        for v in 0..n {
            if u != v {
                if let Some(x) = d[u][v] {
                    s += 1.0 / x as f64;
                }
            }
        }
    }
    s / (n * (n - 1)) as f64
}

/// Bow-tie class names per vertex relative to the largest SCC (ties to the
/// SCC with the smallest member), from the transitive closure alone.
pub fn bowtie(g: &Graph) -> Vec<&'static str> {
    let n = g.n;
    let c = closure(g);
    // SCC of v = vertices mutually reachable with v
    let mut best: Vec<usize> = Vec::new();
    for v in 0..n {
        let scc: Vec<usize> = (0..n).filter(|&u| c[v][u] && c[u][v]).collect();
        if scc.len() > best.len() || (scc.len() == best.len() && scc[0] < best[0]) {
            best = scc;
        }
    }
    let core: BTreeSet<usize> = best.into_iter().collect();
    let from_core = |v: usize| core.iter().any(|&x| c[x][v]);
    let to_core = |v: usize| core.iter().any(|&x| c[v][x]);
    let base: Vec<&'static str> = (0..n)
        .map(|v| {
            if core.contains(&v) {
                "LSCC"
            } else if to_core(v) {
                "IN"
            } else if from_core(v) {
                "OUT"
            } else {
                ""
            }
        })
        .collect();
    (0..n)
        .map(|v| {
            if !base[v].is_empty() {
                return base[v];
            }
            let from_in = (0..n).any(|u| base[u] == "IN" && c[u][v]);
            let to_out = (0..n).any(|u| base[u] == "OUT" && c[v][u]);
            match (from_in, to_out) {
                (true, true) => "TUBES",
                (true, false) | (false, true) => "TENDRILS",
                (false, false) => "DISCONNECTED",
            }
        })
        .collect()
}

/// Weakly connected component label per vertex (smallest member id).
pub fn weak_labels(g: &Graph) -> Vec<usize> {
    let und = Graph {
        n: g.n,
        directed: false,
        edges: g.edges.clone(),
    };
    let c = closure(&und);
    (0..g.n)
        .map(|v| (0..g.n).find(|&u| c[v][u]).expect("reflexive"))
        .collect()
}

pub type WeightedEdges = BTreeMap<(usize, usize), u64>;

/// Mutual pairs {u, v} (u < v) with weight min(w(u,v), w(v,u)).
pub fn mutual_edges(directed: &WeightedEdges) -> WeightedEdges {
    let mut out = BTreeMap::new();
    for (&(u, v), &w) in directed {
        if u < v {
            if let Some(&back) = directed.get(&(v, u)) {
                out.insert((u, v), w.min(back));
            }
        }
    }
    out
}

/// Edges present in every input, weight = min.
pub fn edge_intersection(graphs: &[WeightedEdges]) -> WeightedEdges {
    let mut out = BTreeMap::new();
    'edges: for (&e, &w) in &graphs[0] {
        let mut m = w;
        for g in &graphs[1..] {
            match g.get(&e) {
                Some(&x) => m = m.min(x),
                None => continue 'edges,
            }
        }
        out.insert(e, m);
    }
    out
}

/// Edges present in any input, weight = max.
pub fn edge_union(graphs: &[WeightedEdges]) -> WeightedEdges {
    let mut out: WeightedEdges = BTreeMap::new();
    for g in graphs {
        for (&e, &w) in g {
            let slot = out.entry(e).or_insert(0);
            *slot = (*slot).max(w);
        }
    }
    out
}

/// Pearson correlation straight from the definition.
pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let cov: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let vx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let vy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

/// Rank of each value: 1 + (#smaller) + (#equal − 1)/2.
pub fn ranks(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|&a| {
            let less = x.iter().filter(|&&b| b < a).count() as f64;
            let eq = x.iter().filter(|&&b| b == a).count() as f64;
            1.0 + less + (eq - 1.0) / 2.0
        })
        .collect()
}

pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    pearson(&ranks(x), &ranks(y))
}

/// Mutual information (nats) of two labelings.
pub fn mutual_information(a: &[usize], b: &[usize]) -> f64 {
    let n = a.len() as f64;
    let mut joint: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut pa: BTreeMap<usize, f64> = BTreeMap::new();
    let mut pb: BTreeMap<usize, f64> = BTreeMap::new();
    for (&x, &y) in a.iter().zip(b) {
        *joint.entry((x, y)).or_default() += 1.0 / n;
        *pa.entry(x).or_default() += 1.0 / n;
        *pb.entry(y).or_default() += 1.0 / n;
    }
    joint.iter().map(|(&(x, y), &p)| p * (p / (pa[&x] * pb[&y])).ln()).sum()
}

pub fn entropy(a: &[usize]) -> f64 {
    let n = a.len() as f64;
    let mut c: BTreeMap<usize, f64> = BTreeMap::new();
    for &x in a {
        *c.entry(x).or_default() += 1.0;
    }
    -c.values().map(|&k| k / n * (k / n).ln()).sum::<f64>()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// AMI with the expected MI averaged over every permutation of `b`
/// (feasible for n <= 8), arithmetic-mean normalisation.
pub fn ami_by_permutation(a: &[usize], b: &[usize]) -> f64 {
    let perms = permutations(a.len());
    let emi = perms
        .iter()
        .map(|p| {
            let pb: Vec<usize> = p.iter().map(|&i| b[i]).collect();
            mutual_information(a, &pb)
        })
        .sum::<f64>()
        / perms.len() as f64;
    let mi = mutual_information(a, b);
    let mean_h = (entropy(a) + entropy(b)) / 2.0;
    (mi - emi) / (mean_h - emi)
}

/// Weighted modularity straight from the double sum over vertex pairs.
/// `w` is a symmetric weight matrix without self-loops.
pub fn modularity(w: &[Vec<f64>], labels: &[usize]) -> f64 {
    let n = w.len();
    let k: Vec<f64> = w.iter().map(|r| r.iter().sum()).collect();
    let two_m: f64 = k.iter().sum();
    let mut q = 0.0;
    for u in 0..n {
        for v in 0..n {
            if labels[u] == labels[v] {
                q += w[u][v] - k[u] * k[v] / two_m;
            }
        }
    }
    q / two_m
}

/// Largest gap between an empirical CDF and `model_cdf` over every integer
/// in [xmin, max(sample)].
pub fn ks_scan(sample: &[u64], xmin: u64, model_cdf: impl Fn(u64) -> f64) -> f64 {
    let tail: Vec<u64> = sample.iter().copied().filter(|&x| x >= xmin).collect();
    let n = tail.len() as f64;
    let hi = *tail.iter().max().expect("non-empty tail");
    (xmin..=hi)
        .map(|x| {
            let emp = tail.iter().filter(|&&t| t <= x).count() as f64 / n;
            (emp - model_cdf(x)).abs()
        })
        .fold(0.0, f64::max)
}
