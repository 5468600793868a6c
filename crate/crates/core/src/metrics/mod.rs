//! Global and per-vertex graph metrics.
//!
//! Every distance-based quantity is unweighted: edge weights express
//! connection strength, not length. Only PageRank and HITS consult weights,
//! and only when [`RankOptions::weighted`] is set.

mod paths;
mod rank;
mod reach;
mod structure;

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{GraphError, ServiceGraph};
use crate::ingest::LcRatio;
use crate::scalar::Real;

pub use paths::bfs_distances;
pub use rank::{hits, pagerank, Hits, RankOptions, DEFAULT_DAMPING, DEFAULT_TOLERANCE};
pub use reach::{hub_reach_curve, DEFAULT_TOP_HUBS};
pub use structure::{assortativity, average_degree, centralization, global_transitivity, local_transitivity};

use paths::{sweep, SweepOptions};

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("need at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },
    #[error("{0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistanceStats<F> {
    /// Largest finite distance over ordered pairs.
    pub diameter: u32,
    /// Mean finite distance over ordered pairs `u != v`; NaN without any.
    pub avg_distance: F,
    /// Mean of `1 / dist(u, v)` over all ordered pairs, with `1/inf = 0`.
    pub global_efficiency: F,
}

pub fn distance_stats<F: Real>(g: &ServiceGraph) -> Result<DistanceStats<F>, MetricsError> {
    let n = g.n();
    if n < 2 {
        return Err(MetricsError::TooFewVertices { needed: 2, got: n });
    }
    let s = sweep::<F>(g, SweepOptions::default());
    let avg = if s.finite_pairs == 0 {
        F::nan()
    } else {
        F::of_u64(s.dist_total) / F::of_u64(s.finite_pairs)
    };
    Ok(DistanceStats {
        diameter: s.diameter,
        avg_distance: avg,
        global_efficiency: s.inverse_total / F::of_usize(n * (n - 1)),
    })
}

/// Whole-graph summary. Fields that only apply to one kind of graph are
/// `None` on the other.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlobalMetrics<F> {
    pub directed: bool,
    pub n: usize,
    pub m: usize,
    pub avg_degree: F,
    pub assortativity: F,
    pub diameter: u32,
    pub avg_distance: F,
    pub global_efficiency: F,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_in_norm: Option<F>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_out_norm: Option<F>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_centralization: Option<F>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub transitivity: Option<F>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_norm: Option<F>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centralization: Option<F>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clustering: Option<F>,
}

/// All global metrics of `g` (N >= 2). Centralization is NaN below three vertices.
pub fn global_metrics<F: Real>(g: &ServiceGraph) -> Result<GlobalMetrics<F>, MetricsError> {
    let dist = distance_stats::<F>(g)?;
    let n = g.n();
    let nf = F::of_usize(n);
    let cen = centralization::<F>(g).unwrap_or_else(|_| F::nan());
    let trans = global_transitivity::<F>(g);
    let max_of = |f: &dyn Fn(usize) -> usize| F::of_usize((0..n).map(f).max().unwrap_or(0)) / nf;
    let directed = g.is_directed();
    Ok(GlobalMetrics {
        directed,
        n,
        m: g.m(),
        avg_degree: average_degree(g),
        assortativity: assortativity(g),
        diameter: dist.diameter,
        avg_distance: dist.avg_distance,
        global_efficiency: dist.global_efficiency,
        max_in_norm: directed.then(|| max_of(&|v| g.in_degree(v))),
        max_out_norm: directed.then(|| max_of(&|v| g.out_degree(v))),
        out_centralization: directed.then_some(cen),
        transitivity: directed.then_some(trans),
        max_norm: (!directed).then(|| max_of(&|v| g.degree(v))),
        centralization: (!directed).then_some(cen),
        clustering: (!directed).then_some(trans),
    })
}

/// Per-vertex metric table, one entry per vertex of the graph in vertex order.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexMetrics<F> {
    pub vertices: Vec<String>,
    pub in_degree: Vec<F>,
    pub out_degree: Vec<F>,
    pub degree: Vec<F>,
    pub betweenness: Vec<F>,
    pub closeness: Vec<F>,
    pub pagerank: Vec<F>,
    pub authscore: Vec<F>,
    pub hubscore: Vec<F>,
    pub efficiency: Vec<F>,
    pub transitivity: Vec<F>,
    pub eccentricity: Vec<F>,
    pub lcratio: Vec<F>,
}

impl<F: Real> VertexMetrics<F> {
    /// Column names in CSV order (after the leading `vertex` column).
    pub const COLUMNS: [&'static str; 12] = [
        "in_degree",
        "out_degree",
        "degree",
        "betweenness",
        "closeness",
        "pagerank",
        "authscore",
        "hubscore",
        "efficiency",
        "transitivity",
        "eccentricity",
        "lcratio",
    ];

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn column(&self, name: &str) -> Option<&[F]> {
        Some(match name {
            "in_degree" => &self.in_degree,
            "out_degree" => &self.out_degree,
            "degree" => &self.degree,
            "betweenness" => &self.betweenness,
            "closeness" => &self.closeness,
            "pagerank" => &self.pagerank,
            "authscore" => &self.authscore,
            "hubscore" => &self.hubscore,
            "efficiency" => &self.efficiency,
            "transitivity" => &self.transitivity,
            "eccentricity" => &self.eccentricity,
            "lcratio" => &self.lcratio,
            _ => return None,
        })
    }

    pub fn columns(&self) -> Vec<(&'static str, &[F])> {
        Self::COLUMNS
            .iter()
            .map(|&c| (c, self.column(c).expect("known column")))
            .collect()
    }

    /// CSV with header `vertex,<COLUMNS>`; not-a-value entries print as `NaN`.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["vertex"];
        header.extend(Self::COLUMNS);
        w.write_record(&header)?;
        let cols = self.columns();
        for (i, v) in self.vertices.iter().enumerate() {
            let mut row = vec![v.clone()];
            row.extend(cols.iter().map(|(_, c)| c[i].to_string()));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Per-vertex metrics.
///
/// Closeness uses distances into each vertex, rescaled by the reachable
/// share: `CC(v) = (r/(N-1)) * (r / sum_u dist(u,v))` with `r` the number
/// of vertices that reach `v`. Efficiency and transitivity are NaN for
/// vertices with fewer than two out-neighbors; lcratio is NaN for services
/// missing from `lcratios`.
pub fn vertex_metrics<F: Real>(
    g: &ServiceGraph,
    lcratios: &BTreeMap<String, LcRatio>,
    rank: RankOptions,
) -> VertexMetrics<F> {
    let n = g.n();
    let s = sweep::<F>(
        g,
        SweepOptions {
            betweenness: true,
            efficiency: true,
        },
    );
    let hits = hits::<F>(g, rank);
    let pagerank = pagerank::<F>(g, rank);
    let transitivity = local_transitivity::<F>(g);

    let closeness = (0..n)
        .map(|v| {
            let r = s.into_reach[v];
            if r == 0 || n < 2 {
                F::zero()
            } else {
                let rf = F::of_u64(r);
                (rf / F::of_usize(n - 1)) * (rf / F::of_u64(s.into_dist_sum[v]))
            }
        })
        .collect();
    let efficiency = (0..n)
        .map(|v| {
            let k = g.out_degree(v);
            if k < 2 {
                F::nan()
            } else {
                s.efficiency_sum[v] / F::of_usize(k * (k - 1))
            }
        })
        .collect();
    let lcratio = g
        .vertices()
        .iter()
        .map(|id| match lcratios.get(id) {
            Some(r) => F::of_u64(*r.numer()) / F::of_u64(*r.denom()),
            None => F::nan(),
        })
        .collect();

    VertexMetrics {
        vertices: g.vertices().to_vec(),
        in_degree: (0..n).map(|v| F::of_usize(g.in_degree(v))).collect(),
        out_degree: (0..n).map(|v| F::of_usize(g.out_degree(v))).collect(),
        degree: (0..n).map(|v| F::of_usize(g.degree(v))).collect(),
        betweenness: s.betweenness,
        closeness,
        pagerank,
        authscore: hits.authorities,
        hubscore: hits.hubs,
        efficiency,
        transitivity,
        eccentricity: s.eccentricity.iter().map(|&e| F::of_u64(u64::from(e))).collect(),
        lcratio,
    }
}
