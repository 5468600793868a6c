//! Content labels: the thematic class scheme and the label file.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Read;

use serde::Serialize;

use super::StatsError;
use crate::community::Partition;
use crate::graph::ServiceGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ServiceType {
    Normal,
    Suspicious,
    Unknown,
}

impl ServiceType {
    pub fn name(self) -> &'static str {
        match self {
            ServiceType::Normal => "Normal",
            ServiceType::Suspicious => "Suspicious",
            ServiceType::Unknown => "Unknown",
        }
    }
}

/// Class names and their type.
pub const CLASSES: [(&str, ServiceType); 29] = [
    ("Art", ServiceType::Normal),
    ("Casino", ServiceType::Normal),
    ("Cryptocurrency", ServiceType::Normal),
    ("Forum (Legal)", ServiceType::Normal),
    ("Hosting", ServiceType::Normal),
    ("Library", ServiceType::Normal),
    ("Marketplace (Legal)", ServiceType::Normal),
    ("Personal", ServiceType::Normal),
    ("Politics", ServiceType::Normal),
    ("Religion", ServiceType::Normal),
    ("Services (Legal)", ServiceType::Normal),
    ("Social-Network", ServiceType::Normal),
    ("Counterfeit Credit-Cards", ServiceType::Suspicious),
    ("Counterfeit Money", ServiceType::Suspicious),
    ("Counterfeit Personal-Identification", ServiceType::Suspicious),
    ("Cryptolocker", ServiceType::Suspicious),
    ("Drugs", ServiceType::Suspicious),
    ("Forum (Illegal)", ServiceType::Suspicious),
    ("Fraud", ServiceType::Suspicious),
    ("Hacking", ServiceType::Suspicious),
    ("Human-Trafficking", ServiceType::Suspicious),
    ("Leaked-Data", ServiceType::Suspicious),
    ("Marketplace (Illegal)", ServiceType::Suspicious),
    ("Porno", ServiceType::Suspicious),
    ("Services (Illegal)", ServiceType::Suspicious),
    ("Violence", ServiceType::Suspicious),
    ("Empty", ServiceType::Unknown),
    ("Locked", ServiceType::Unknown),
    ("Down", ServiceType::Unknown),
];

/// Index into [`CLASSES`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ContentClass(u8);

impl ContentClass {
    pub fn parse(name: &str) -> Option<ContentClass> {
        let name = name.trim();
        CLASSES
            .iter()
            .position(|(c, _)| c.eq_ignore_ascii_case(name))
            .map(|i| ContentClass(i as u8))
    }

    pub fn name(self) -> &'static str {
        CLASSES[self.0 as usize].0
    }

    pub fn service_type(self) -> ServiceType {
        CLASSES[self.0 as usize].1
    }

    /// Classes of type Normal or Suspicious, in table order.
    pub fn analyzable() -> impl Iterator<Item = ContentClass> {
        (0..CLASSES.len())
            .filter(|&i| CLASSES[i].1 != ServiceType::Unknown)
            .map(|i| ContentClass(i as u8))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Label {
    pub class: ContentClass,
    pub language: String,
}

/// Which label attribute induces a partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelAttribute {
    Class,
    Type,
    Language,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct LabelSet {
    labels: BTreeMap<String, Label>,
}

impl LabelSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, service: String, label: Label) -> Result<(), StatsError> {
        if self.labels.contains_key(&service) {
            return Err(StatsError::DuplicateService(service));
        }
        self.labels.insert(service, label);
        Ok(())
    }

    /// Reads CSV `service,class,language` with a header row. Class names
    /// match case-insensitively; unknown names are errors.
    pub fn read_csv<R: Read>(input: R) -> Result<LabelSet, StatsError> {
        let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
        let mut set = LabelSet::new();
        for (i, rec) in r.records().enumerate() {
            let line = i + 2;
            let rec = rec?;
            if rec.len() != 3 {
                return Err(StatsError::Parse {
                    line,
                    message: format!("expected 3 fields, found {}", rec.len()),
                });
            }
            let class = ContentClass::parse(&rec[1]).ok_or_else(|| StatsError::UnknownClass {
                line,
                name: rec[1].to_string(),
            })?;
            set.insert(
                rec[0].to_string(),
                Label {
                    class,
                    language: rec[2].to_string(),
                },
            )?;
        }
        Ok(set)
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<(), StatsError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["service", "class", "language"])?;
        for (s, l) in &self.labels {
            w.write_record([s.as_str(), l.class.name(), &l.language])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, service: &str) -> Option<&Label> {
        self.labels.get(service)
    }

    /// Label of `service` unless it is missing or of Unknown type.
    pub fn analyzable(&self, service: &str) -> Option<&Label> {
        self.labels
            .get(service)
            .filter(|l| l.class.service_type() != ServiceType::Unknown)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Label)> {
        self.labels.iter()
    }

    /// Partition of the analyzable services among `vertices` by one attribute.
    pub fn partition<'a>(&self, vertices: impl IntoIterator<Item = &'a String>, attr: LabelAttribute) -> Partition {
        let pairs: BTreeSet<(String, String)> = vertices
            .into_iter()
            .filter_map(|v| {
                self.analyzable(v).map(|l| {
                    let key = match attr {
                        LabelAttribute::Class => l.class.name().to_string(),
                        LabelAttribute::Type => l.class.service_type().name().to_string(),
                        LabelAttribute::Language => l.language.clone(),
                    };
                    (v.clone(), key)
                })
            })
            .collect();
        Partition::from_pairs(pairs).expect("set keys are unique")
    }
}

/// Class distribution over a graph's labeled vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Prevalence {
    pub n_vertices: usize,
    pub n_labeled: usize,
    /// Labeled, non-Unknown share of the graph's vertices.
    pub coverage: f64,
    /// Every Normal and Suspicious class, including absent ones.
    pub classes: BTreeMap<String, f64>,
    pub types: BTreeMap<String, f64>,
}

pub fn tag_prevalence(labels: &LabelSet, g: &ServiceGraph) -> Result<Prevalence, StatsError> {
    let mut counts: BTreeMap<ContentClass, usize> = ContentClass::analyzable().map(|c| (c, 0)).collect();
    let mut n_labeled = 0usize;
    for v in g.vertices() {
        if let Some(l) = labels.analyzable(v) {
            *counts.get_mut(&l.class).expect("analyzable class") += 1;
            n_labeled += 1;
        }
    }
    if n_labeled == 0 {
        return Err(StatsError::NoLabeledVertices);
    }
    let mut types: BTreeMap<String, f64> = BTreeMap::new();
    let mut classes = BTreeMap::new();
    for (c, k) in counts {
        let f = k as f64 / n_labeled as f64;
        classes.insert(c.name().to_string(), f);
        *types.entry(c.service_type().name().to_string()).or_insert(0.0) += f;
    }
    Ok(Prevalence {
        n_vertices: g.n(),
        n_labeled,
        coverage: n_labeled as f64 / g.n() as f64,
        classes,
        types,
    })
}
