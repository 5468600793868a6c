//! Bow-tie decomposition of directed graphs.
//!
//! Classes, relative to the largest strongly connected component (LSCC):
//! IN reaches the LSCC, OUT is reached from it, TUBES are reached from IN
//! and reach OUT, TENDRILS have exactly one of those two properties, and
//! everything else is DISCONNECTED.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::graph::{strong_components, GraphError, ServiceGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum BowTieClass {
    Lscc,
    In,
    Out,
    Tubes,
    Tendrils,
    Disconnected,
}

impl BowTieClass {
    pub const ALL: [BowTieClass; 6] = [
        BowTieClass::Lscc,
        BowTieClass::In,
        BowTieClass::Out,
        BowTieClass::Tubes,
        BowTieClass::Tendrils,
        BowTieClass::Disconnected,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BowTieClass::Lscc => "LSCC",
            BowTieClass::In => "IN",
            BowTieClass::Out => "OUT",
            BowTieClass::Tubes => "TUBES",
            BowTieClass::Tendrils => "TENDRILS",
            BowTieClass::Disconnected => "DISCONNECTED",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BowTieAssignment {
    pub vertices: Vec<String>,
    pub classes: Vec<BowTieClass>,
    /// Set when the graph has no cycle and the LSCC is a single vertex
    /// picked by the lexicographic tie-break.
    pub singleton_lscc: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BowTieRow {
    pub class: BowTieClass,
    pub count: usize,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BowTieReport {
    pub n: usize,
    pub singleton_lscc: bool,
    pub components: Vec<BowTieRow>,
}

impl BowTieAssignment {
    pub fn class_of(&self, id: &str) -> Option<BowTieClass> {
        self.vertices
            .binary_search_by(|v| v.as_str().cmp(id))
            .ok()
            .map(|i| self.classes[i])
    }

    pub fn counts(&self) -> BTreeMap<BowTieClass, usize> {
        let mut counts: BTreeMap<BowTieClass, usize> = BowTieClass::ALL.iter().map(|&c| (c, 0)).collect();
        for c in &self.classes {
            *counts.get_mut(c).expect("all classes present") += 1;
        }
        counts
    }

    /// Counts and fractions per class, in table order.
    pub fn report(&self) -> BowTieReport {
        let n = self.classes.len();
        let counts = self.counts();
        BowTieReport {
            n,
            singleton_lscc: self.singleton_lscc,
            components: BowTieClass::ALL
                .iter()
                .map(|&class| BowTieRow {
                    class,
                    count: counts[&class],
                    fraction: counts[&class] as f64 / n as f64,
                })
                .collect(),
        }
    }
}

fn reach(g: &ServiceGraph, seeds: impl IntoIterator<Item = usize>, forward: bool) -> Vec<bool> {
    let mut seen = vec![false; g.n()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for s in seeds {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        let adj = if forward { g.out_neighbors(v) } else { g.in_neighbors(v) };
        for &(w, _) in adj {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

pub fn bowtie_decompose(g: &ServiceGraph) -> Result<BowTieAssignment, GraphError> {
    if !g.is_directed() {
        return Err(GraphError::ExpectedDirected);
    }
    if g.is_empty() {
        return Err(GraphError::EmptyGraph);
    }
    // components are sorted, so comp[0] is each component's minimum vertex
    let lscc = strong_components(g)
        .into_iter()
        .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
        .expect("non-empty graph has an SCC");
    let singleton_lscc = lscc.len() == 1;

    let n = g.n();
    let mut in_lscc = vec![false; n];
    for &v in &lscc {
        in_lscc[v] = true;
    }
    let from_core = reach(g, lscc.iter().copied(), true);
    let to_core = reach(g, lscc.iter().copied(), false);

    let mut classes = vec![BowTieClass::Disconnected; n];
    for v in 0..n {
        classes[v] = if in_lscc[v] {
            BowTieClass::Lscc
        } else if to_core[v] {
            BowTieClass::In
        } else if from_core[v] {
            BowTieClass::Out
        } else {
            BowTieClass::Disconnected
        };
    }
    let from_in = reach(g, (0..n).filter(|&v| classes[v] == BowTieClass::In), true);
    let to_out = reach(g, (0..n).filter(|&v| classes[v] == BowTieClass::Out), false);
    for v in 0..n {
        if classes[v] != BowTieClass::Disconnected {
            continue;
        }
        // reach() marks the seeds themselves; v is neither IN nor OUT here,
        // so a mark means a genuine path.
        classes[v] = match (from_in[v], to_out[v]) {
            (true, true) => BowTieClass::Tubes,
            (true, false) | (false, true) => BowTieClass::Tendrils,
            (false, false) => BowTieClass::Disconnected,
        };
    }
    Ok(BowTieAssignment {
        vertices: g.vertices().to_vec(),
        classes,
        singleton_lscc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Directedness;
    use BowTieClass::*;

    fn directed(edges: &[(&str, &str)], extra: &[&str]) -> ServiceGraph {
        ServiceGraph::from_edges(
            Directedness::Directed,
            extra.iter().map(|s| s.to_string()),
            edges.iter().map(|(s, t)| (s.to_string(), t.to_string(), 1)),
        )
        .unwrap()
    }

    #[test]
    fn textbook_instance() {
        let g = directed(
            &[("A", "B"), ("B", "A"), ("C", "A"), ("B", "D"), ("C", "E"), ("E", "D"), ("C", "F")],
            &["G"],
        );
        let b = bowtie_decompose(&g).unwrap();
        let got: Vec<_> = ["A", "B", "C", "D", "E", "F", "G"]
            .iter()
            .map(|v| b.class_of(v).unwrap())
            .collect();
        assert_eq!(got, vec![Lscc, Lscc, In, Out, Tubes, Tendrils, Disconnected]);
        assert!(!b.singleton_lscc);
        let r = b.report();
        assert_eq!(r.components.iter().map(|c| c.count).sum::<usize>(), 7);
        assert!((r.components.iter().map(|c| c.fraction).sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn strongly_connected_graph() {
        let g = directed(&[("a", "b"), ("b", "c"), ("c", "a")], &[]);
        let b = bowtie_decompose(&g).unwrap();
        assert!(b.classes.iter().all(|&c| c == Lscc));
    }

    #[test]
    fn out_star_with_hub_first() {
        // hub sorts before leaves: LSCC = {a_hub}, leaves in OUT
        let g = directed(&[("a_hub", "x1"), ("a_hub", "x2"), ("a_hub", "x3")], &[]);
        let b = bowtie_decompose(&g).unwrap();
        assert!(b.singleton_lscc);
        assert_eq!(b.classes, vec![Lscc, Out, Out, Out]);
    }

    #[test]
    fn out_star_with_leaf_first() {
        // leaf "a" is the lexicographic minimum: LSCC = {a}, hub in IN,
        // the other leaves are reached from IN but reach no OUT: TENDRILS
        let g = directed(&[("hub", "a"), ("hub", "b"), ("hub", "c")], &[]);
        let b = bowtie_decompose(&g).unwrap();
        assert_eq!(b.class_of("a"), Some(Lscc));
        assert_eq!(b.class_of("hub"), Some(In));
        assert_eq!(b.class_of("b"), Some(Tendrils));
        assert_eq!(b.class_of("c"), Some(Tendrils));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            bowtie_decompose(&ServiceGraph::empty(Directedness::Directed)),
            Err(GraphError::EmptyGraph)
        ));
        let u = ServiceGraph::from_edges(Directedness::Undirected, [], [("a".into(), "b".into(), 1)]).unwrap();
        assert!(matches!(bowtie_decompose(&u), Err(GraphError::ExpectedDirected)));
    }
}
