mod common;

use std::collections::BTreeMap;

use common::*;
use hsgraph::graph::{Directedness, ServiceGraph};
use hsgraph::metrics::{distance_stats, hub_reach_curve, pagerank, vertex_metrics, RankOptions};
use hsgraph_oracle as oracle;
use proptest::prelude::*;

fn check_vertex_metrics(g: &ServiceGraph) {
    let o = to_oracle(g);
    let vm = vertex_metrics::<f64>(g, &BTreeMap::new(), RankOptions::default());
    let bc = oracle::betweenness(&o);
    let cc = oracle::closeness(&o);
    let ecc = oracle::eccentricity(&o);
    let eff = oracle::local_efficiency(&o);
    let tr = oracle::local_transitivity(&o);
    for v in 0..g.n() {
        assert!(close(vm.betweenness[v], bc[v], 1e-9), "bc {v}: {} vs {}", vm.betweenness[v], bc[v]);
        assert!(close(vm.closeness[v], cc[v], 1e-9), "cc {v}");
        assert_eq!(vm.eccentricity[v], f64::from(ecc[v]), "ecc {v}");
        assert!(close(vm.efficiency[v], eff[v], 1e-9), "eff {v}: {} vs {}", vm.efficiency[v], eff[v]);
        assert!(close(vm.transitivity[v], tr[v], 1e-9), "T {v}");
    }
}

#[test]
fn centralities_match_oracle_directed() {
    for seed in 0..50 {
        check_vertex_metrics(&random_graph(seed, Directedness::Directed, 100, 0.01, 0.08));
    }
}

#[test]
fn centralities_match_oracle_undirected() {
    for seed in 100..150 {
        check_vertex_metrics(&random_graph(seed, Directedness::Undirected, 100, 0.01, 0.08));
    }
}

#[test]
fn global_efficiency_matches_oracle() {
    for seed in 0..40 {
        let d = if seed % 2 == 0 { Directedness::Directed } else { Directedness::Undirected };
        let g = random_graph(seed, d, 200, 0.002, 0.03);
        if g.n() < 2 {
            continue;
        }
        let s = distance_stats::<f64>(&g).unwrap();
        assert!((s.global_efficiency - oracle::global_efficiency(&to_oracle(&g))).abs() < 1e-12);
    }
}

#[test]
fn analytic_fixed_points() {
    let edges = |d, es: &[(&str, &str)]| {
        ServiceGraph::from_edges(d, [], es.iter().map(|(a, b)| (a.to_string(), b.to_string(), 1))).unwrap()
    };
    let cycle3 = edges(Directedness::Directed, &[("A", "B"), ("B", "C"), ("C", "A")]);
    assert_eq!(distance_stats::<f64>(&cycle3).unwrap().global_efficiency, 0.75);
    let path = edges(Directedness::Undirected, &[("A", "B"), ("B", "C")]);
    let vm = vertex_metrics::<f64>(&path, &BTreeMap::new(), RankOptions::default());
    assert_eq!(vm.betweenness[1], 2.0);
    // symmetric cycle: uniform pagerank
    let ring: Vec<(String, String, u64)> = (0..7).map(|i| (name(i), name((i + 1) % 7), 1)).collect();
    let ring = ServiceGraph::from_edges(Directedness::Directed, [], ring).unwrap();
    for p in pagerank::<f64>(&ring, RankOptions::default()) {
        assert!((p - 1.0 / 7.0).abs() < 1e-9);
    }
}

#[test]
fn undirected_distance_bounds() {
    for seed in 0..30 {
        let g = random_graph(seed, Directedness::Undirected, 60, 0.1, 0.3);
        let g = hsgraph::graph::giant_wcc(&g).unwrap();
        if g.n() < 2 {
            continue;
        }
        let s = distance_stats::<f64>(&g).unwrap();
        let d = f64::from(s.diameter);
        assert!(s.avg_distance >= 1.0 && d >= s.avg_distance);
        assert!(s.global_efficiency >= 1.0 / d - 1e-15);
    }
}

fn weighted_graph() -> impl Strategy<Value = ServiceGraph> {
    (2usize..25, prop::collection::vec((0usize..25, 0usize..25, 1u64..9), 0..80)).prop_map(|(n, raw)| {
        let mut edges = BTreeMap::new();
        for (u, v, w) in raw {
            let (u, v) = (u % n, v % n);
            if u != v {
                edges.insert((u, v), w);
            }
        }
        from_weighted(Directedness::Directed, n, &edges)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pagerank_scale_invariant(g in weighted_graph(), k in 2u64..50) {
        let opts = RankOptions::default();
        let p = pagerank::<f64>(&g, opts);
        prop_assert!(p.iter().all(|&x| x >= 0.0));
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        let scaled = ServiceGraph::from_edges(
            g.directedness(),
            g.vertices().iter().cloned(),
            g.edges().iter().map(|e| (g.vertex(e.source).to_string(), g.vertex(e.target).to_string(), e.weight * k)),
        ).unwrap();
        let q = pagerank::<f64>(&scaled, opts);
        for (a, b) in p.iter().zip(&q) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn removing_an_edge_never_raises_efficiency(g in weighted_graph(), pick in any::<prop::sample::Index>()) {
        prop_assume!(g.m() > 0);
        let before = distance_stats::<f64>(&g).unwrap().global_efficiency;
        let drop = pick.index(g.m());
        let kept: Vec<(String, String, u64)> = g.edges().iter().enumerate()
            .filter(|(i, _)| *i != drop)
            .map(|(_, e)| (g.vertex(e.source).to_string(), g.vertex(e.target).to_string(), e.weight))
            .collect();
        let h = ServiceGraph::from_edges(g.directedness(), g.vertices().iter().cloned(), kept).unwrap();
        let after = distance_stats::<f64>(&h).unwrap().global_efficiency;
        prop_assert!(after <= before + 1e-15);
        prop_assert!((after - oracle::global_efficiency(&to_oracle(&h))).abs() < 1e-12);
    }

    #[test]
    fn hub_reach_monotone(g in weighted_graph(), k in 1usize..30) {
        prop_assume!(g.m() > 0);
        let c = hub_reach_curve::<f64>(&g, k).unwrap();
        prop_assert!(c.windows(2).all(|w| w[0] <= w[1]));
        prop_assert!(*c.last().unwrap() <= 1.0);
    }
}
