//! Partitions, weighted modularity, Louvain and adjusted mutual information.

mod ami;
mod louvain;
mod modularity;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::hash::Hash;
use std::io::{BufRead, Write};

use thiserror::Error;

pub use ami::{adjusted_mutual_information, mutual_information, ContingencyTable};
pub use louvain::{louvain, LouvainOptions, DEFAULT_LOUVAIN_SEED};
pub use modularity::{modularity, SymmetricWeights};

#[derive(Debug, Error)]
pub enum CommunityError {
    #[error("vertex `{0}` is not covered by the partition")]
    Uncovered(String),
    #[error("partitions cover different vertex sets")]
    DomainMismatch,
    #[error("vertex `{0}` assigned twice")]
    DuplicateVertex(String),
    #[error("partition file line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Hard assignment of vertices to clusters.
///
/// Vertices are sorted; labels are dense from 0 and numbered in order of
/// first appearance, so two partitions describing the same clustering are
/// equal as values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    vertices: Vec<String>,
    labels: Vec<usize>,
}

impl Partition {
    pub fn from_pairs<L, I>(pairs: I) -> Result<Self, CommunityError>
    where
        L: Eq + Hash,
        I: IntoIterator<Item = (String, L)>,
    {
        let mut map: BTreeMap<String, L> = BTreeMap::new();
        for (v, l) in pairs {
            if map.contains_key(&v) {
                return Err(CommunityError::DuplicateVertex(v));
            }
            map.insert(v, l);
        }
        let mut dense: HashMap<L, usize> = HashMap::new();
        let mut vertices = Vec::with_capacity(map.len());
        let mut labels = Vec::with_capacity(map.len());
        for (v, l) in map {
            let next = dense.len();
            labels.push(*dense.entry(l).or_insert(next));
            vertices.push(v);
        }
        Ok(Partition { vertices, labels })
    }

    /// Builds a partition over sorted, unique `vertices` from raw labels.
    pub(crate) fn from_sorted(vertices: Vec<String>, raw: &[usize]) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut dense = HashMap::new();
        let labels = raw
            .iter()
            .map(|&l| {
                let next = dense.len();
                *dense.entry(l).or_insert(next)
            })
            .collect();
        Partition { vertices, labels }
    }

    pub fn singletons(vertices: impl IntoIterator<Item = String>) -> Self {
        let vertices: Vec<String> = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let labels = (0..vertices.len()).collect();
        Partition { vertices, labels }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn cluster_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    pub fn label_of(&self, id: &str) -> Option<usize> {
        self.vertices
            .binary_search_by(|v| v.as_str().cmp(id))
            .ok()
            .map(|i| self.labels[i])
    }

    /// The partition restricted to `keep`; labels are re-densified.
    pub fn restrict(&self, keep: &BTreeSet<String>) -> Partition {
        let (vertices, raw): (Vec<String>, Vec<usize>) = self
            .vertices
            .iter()
            .zip(&self.labels)
            .filter(|(v, _)| keep.contains(*v))
            .map(|(v, l)| (v.clone(), *l))
            .unzip();
        Partition::from_sorted(vertices, &raw)
    }

    /// Both partitions restricted to their common vertices.
    pub fn on_common_vertices(&self, other: &Partition) -> (Partition, Partition) {
        let a: BTreeSet<String> = self.vertices.iter().cloned().collect();
        let common: BTreeSet<String> = other.vertices.iter().filter(|v| a.contains(*v)).cloned().collect();
        (self.restrict(&common), other.restrict(&common))
    }

    /// CSV `vertex,cluster`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CommunityError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["vertex", "cluster"])?;
        for (v, l) in self.vertices.iter().zip(&self.labels) {
            w.write_record([v.as_str(), &l.to_string()])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    /// Reads `vertex,cluster` CSV (header required). Cluster labels may be
    /// arbitrary strings.
    pub fn read_csv<R: BufRead>(input: R) -> Result<Partition, CommunityError> {
        let mut r = csv::Reader::from_reader(input);
        let mut pairs = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let rec = rec?;
            if rec.len() != 2 {
                return Err(CommunityError::Parse {
                    line: i + 2,
                    message: "expected vertex,cluster".into(),
                });
            }
            pairs.push((rec[0].to_string(), rec[1].to_string()));
        }
        Partition::from_pairs(pairs)
    }
}

/// Cluster sizes in non-increasing order.
pub fn cluster_size_distribution(p: &Partition) -> Vec<usize> {
    let mut sizes = vec![0usize; p.cluster_count()];
    for &l in p.labels() {
        sizes[l] += 1;
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(pairs: &[(&str, u32)]) -> Partition {
        Partition::from_pairs(pairs.iter().map(|(v, l)| (v.to_string(), *l))).unwrap()
    }

    #[test]
    fn labels_are_canonical() {
        let a = part(&[("b", 7), ("a", 3), ("c", 3)]);
        let b = part(&[("a", 0), ("b", 1), ("c", 0)]);
        assert_eq!(a, b);
        assert_eq!(a.labels(), [0, 1, 0]);
        assert_eq!(a.label_of("c"), Some(0));
    }

    #[test]
    fn duplicate_vertex_rejected() {
        let r = Partition::from_pairs([("a".to_string(), 1), ("a".to_string(), 2)]);
        assert!(matches!(r, Err(CommunityError::DuplicateVertex(_))));
    }

    #[test]
    fn size_distribution() {
        let singles = Partition::singletons((0..5).map(|i| i.to_string()));
        assert_eq!(cluster_size_distribution(&singles), vec![1; 5]);
        let one = part(&[("a", 0), ("b", 0), ("c", 0)]);
        assert_eq!(cluster_size_distribution(&one), vec![3]);
        let mut pairs: Vec<(String, u32)> = (0..7).map(|i| (format!("x{i}"), 2)).collect();
        pairs.extend((0..2).map(|i| (format!("y{i}"), 0)));
        pairs.push(("z".into(), 1));
        let planted = Partition::from_pairs(pairs).unwrap();
        assert_eq!(cluster_size_distribution(&planted), vec![7, 2, 1]);
    }

    #[test]
    fn csv_round_trip() {
        let p = part(&[("a", 0), ("b", 1), ("c", 0)]);
        let mut buf = Vec::new();
        p.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "vertex,cluster\na,0\nb,1\nc,0\n");
        assert_eq!(Partition::read_csv(buf.as_slice()).unwrap(), p);
    }

    #[test]
    fn common_vertices() {
        let p = part(&[("a", 0), ("b", 1), ("c", 1)]);
        let q = part(&[("b", 5), ("c", 6), ("d", 6)]);
        let (p2, q2) = p.on_common_vertices(&q);
        assert_eq!(p2.vertices(), ["b", "c"]);
        assert_eq!(p2.labels(), [0, 0]);
        assert_eq!(q2.labels(), [0, 1]);
    }
}
