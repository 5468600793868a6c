//! DSG construction, mutual-edge reduction and edge-induced graph algebra.

use std::collections::{BTreeMap, BTreeSet};

use super::{Directedness, EdgeKey, GraphError, ServiceGraph};
use crate::ingest::PageRecord;

/// Which link targets become vertices when building a DSG.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LinkScope {
    /// Crawled services plus any target that is a syntactically valid
    /// onion id (16 or 56 base32 chars followed by `.onion`).
    #[default]
    OnionNamespace,
    /// Only services with at least one crawled page.
    CrawledOnly,
}

/// `true` for v2 (16-char) and v3 (56-char) onion service ids.
pub fn is_onion_id(id: &str) -> bool {
    let Some(label) = id.strip_suffix(".onion") else {
        return false;
    };
    (label.len() == 16 || label.len() == 56)
        && label
            .bytes()
            .all(|b| b.is_ascii_lowercase() || (b'2'..=b'7').contains(&b))
}

/// Directed service graph of one snapshot.
///
/// An edge `a -> b` exists iff some page of `a` links to `b`; its weight
/// is the number of such hyperlinks. Self-links and targets outside the
/// onion namespace are dropped.
pub fn build_dsg(pages: &[PageRecord], scope: LinkScope) -> Result<ServiceGraph, GraphError> {
    if let Some(first) = pages.first() {
        if let Some(other) = pages.iter().find(|p| p.snapshot_id != first.snapshot_id) {
            return Err(GraphError::MixedSnapshots(
                first.snapshot_id.clone(),
                other.snapshot_id.clone(),
            ));
        }
    }
    let crawled: BTreeSet<String> = pages.iter().map(|p| p.service_id.clone()).collect();
    let mut vertices = crawled.clone();
    let mut edges: BTreeMap<EdgeKey, u64> = BTreeMap::new();
    for page in pages {
        for target in &page.out_links {
            if *target == page.service_id {
                continue;
            }
            let in_scope = crawled.contains(target)
                || (scope == LinkScope::OnionNamespace && is_onion_id(target));
            if !in_scope {
                continue;
            }
            if !vertices.contains(target) {
                vertices.insert(target.clone());
            }
            *edges
                .entry((page.service_id.clone(), target.clone()))
                .or_default() += 1;
        }
    }
    Ok(ServiceGraph::from_canonical(
        Directedness::Directed,
        vertices,
        edges,
    ))
}

/// Undirected graph of mutually linked pairs, edge-induced.
///
/// The weight of `{a, b}` is `min(w(a->b), w(b->a))`.
pub fn to_usg(dsg: &ServiceGraph) -> Result<ServiceGraph, GraphError> {
    if !dsg.is_directed() {
        return Err(GraphError::ExpectedDirected);
    }
    let mut edges = BTreeMap::new();
    for e in dsg.edges() {
        if e.source < e.target {
            if let Some(back) = dsg.weight(e.target, e.source) {
                edges.insert(
                    (
                        dsg.vertex(e.source).to_string(),
                        dsg.vertex(e.target).to_string(),
                    ),
                    e.weight.min(back),
                );
            }
        }
    }
    Ok(ServiceGraph::from_canonical(
        Directedness::Undirected,
        BTreeSet::new(),
        edges,
    ))
}

fn common_directedness(graphs: &[&ServiceGraph], needed: usize) -> Result<Directedness, GraphError> {
    if graphs.len() < needed {
        return Err(GraphError::TooFewGraphs {
            needed,
            got: graphs.len(),
        });
    }
    let d = graphs[0].directedness();
    if graphs.iter().any(|g| g.directedness() != d) {
        return Err(GraphError::MixedDirectedness);
    }
    Ok(d)
}

/// Edge-induced intersection: edges present in every input, matched on
/// endpoints, weighted by the minimum input weight.
pub fn intersect(graphs: &[&ServiceGraph]) -> Result<ServiceGraph, GraphError> {
    let d = common_directedness(graphs, 2)?;
    let mut edges = graphs[0].edge_map();
    for g in &graphs[1..] {
        let other = g.edge_map();
        edges.retain(|k, w| match other.get(k) {
            Some(w2) => {
                *w = (*w).min(*w2);
                true
            }
            None => false,
        });
    }
    Ok(ServiceGraph::from_canonical(d, BTreeSet::new(), edges))
}

/// Edge-induced union: edges present in at least one input, weighted by
/// the maximum weight among the inputs containing them.
pub fn union(graphs: &[&ServiceGraph]) -> Result<ServiceGraph, GraphError> {
    let d = common_directedness(graphs, 1)?;
    let mut edges: BTreeMap<EdgeKey, u64> = BTreeMap::new();
    for g in graphs {
        for (k, w) in g.edge_map() {
            let slot = edges.entry(k).or_insert(w);
            *slot = (*slot).max(w);
        }
    }
    Ok(ServiceGraph::from_canonical(d, BTreeSet::new(), edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn page(svc: &str, links: &[&str]) -> PageRecord {
        PageRecord {
            snapshot_id: "S1".into(),
            service_id: svc.into(),
            page_path: "/".into(),
            depth: 0,
            char_count: 10,
            out_links: links.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn directed(edges: &[(&str, &str, u64)]) -> ServiceGraph {
        ServiceGraph::from_edges(
            Directedness::Directed,
            [],
            edges.iter().map(|(s, t, w)| (s.to_string(), t.to_string(), *w)),
        )
        .unwrap()
    }

    #[test]
    fn onion_id_syntax() {
        assert!(is_onion_id("violet77pvqdmsiy.onion"));
        assert!(is_onion_id(&format!("{}.onion", "a".repeat(56))));
        assert!(!is_onion_id("x.onion"));
        assert!(!is_onion_id("violet77pvqdmsiy.com"));
        assert!(!is_onion_id("VIOLET77PVQDMSIY.onion"));
        assert!(!is_onion_id("violet18pvqdmsiy.onion"));
    }

    #[test]
    fn repeated_links_flatten_into_weight() {
        let g = build_dsg(&[page("a", &["b", "b"]), page("a", &["b"]), page("b", &[])], LinkScope::default())
            .unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(g.weight(0, 1), Some(3));
    }

    #[test]
    fn self_links_dropped() {
        let g = build_dsg(&[page("a", &["a"])], LinkScope::default()).unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn empty_snapshot_is_empty_graph() {
        let g = build_dsg(&[], LinkScope::default()).unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn link_scope_filters_targets() {
        let onion = "abcdefghijklmnop.onion";
        let pages = [page("a", &[onion, "example.com", "zz.onion"])];
        let g = build_dsg(&pages, LinkScope::OnionNamespace).unwrap();
        assert_eq!(g.vertices(), ["a", onion]);
        let g = build_dsg(&pages, LinkScope::CrawledOnly).unwrap();
        assert_eq!(g.vertices(), ["a"]);
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn mixed_snapshots_rejected() {
        let mut p2 = page("b", &[]);
        p2.snapshot_id = "S2".into();
        assert!(matches!(
            build_dsg(&[page("a", &[]), p2], LinkScope::default()),
            Err(GraphError::MixedSnapshots(..))
        ));
    }

    #[test]
    fn usg_keeps_mutual_pairs_only() {
        let g = directed(&[("A", "B", 1), ("B", "A", 1), ("A", "C", 1)]);
        let u = to_usg(&g).unwrap();
        assert_eq!(u.vertices(), ["A", "B"]);
        assert_eq!(u.m(), 1);
        assert!(to_usg(&directed(&[("A", "B", 1), ("B", "C", 1)])).unwrap().is_empty());
    }

    #[test]
    fn usg_weight_is_min() {
        let u = to_usg(&directed(&[("A", "B", 2), ("B", "A", 5)])).unwrap();
        assert_eq!(u.edges()[0].weight, 2);
        assert!(matches!(to_usg(&u), Err(GraphError::ExpectedDirected)));
    }

    #[test]
    fn intersect_takes_min_weight() {
        let g1 = directed(&[("A", "B", 2), ("B", "C", 1)]);
        let g2 = directed(&[("A", "B", 7)]);
        let i = intersect(&[&g1, &g2]).unwrap();
        assert_eq!(i.vertices(), ["A", "B"]);
        assert_eq!(i.edge_map()[&("A".to_string(), "B".to_string())], 2);
        let disjoint = intersect(&[&g2, &directed(&[("C", "D", 1)])]).unwrap();
        assert!(disjoint.is_empty());
    }

    #[test]
    fn union_takes_max_weight() {
        let g1 = directed(&[("A", "B", 2)]);
        let g2 = directed(&[("A", "B", 7), ("B", "C", 1)]);
        let u = union(&[&g1, &g2]).unwrap();
        let m = u.edge_map();
        assert_eq!(m.len(), 2);
        assert_eq!(m[&("A".to_string(), "B".to_string())], 7);
        assert_eq!(m[&("B".to_string(), "C".to_string())], 1);
        let single = union(&[&g2]).unwrap();
        assert_eq!(single.edge_map(), g2.edge_map());
        assert_eq!(single.vertices(), g2.vertices());
    }

    #[test]
    fn algebra_rejects_bad_inputs() {
        let d = directed(&[("A", "B", 1), ("B", "A", 1)]);
        let u = to_usg(&d).unwrap();
        assert!(matches!(intersect(&[&d, &u]), Err(GraphError::MixedDirectedness)));
        assert!(matches!(union(&[&d, &u]), Err(GraphError::MixedDirectedness)));
        assert!(matches!(intersect(&[&d]), Err(GraphError::TooFewGraphs { .. })));
        assert!(matches!(union(&[]), Err(GraphError::TooFewGraphs { .. })));
    }
}
