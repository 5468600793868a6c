//! Run configuration: one JSON document, adjustable with `key=value`
//! overrides on dotted paths.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;
use hsgraph::community::DEFAULT_LOUVAIN_SEED;
use hsgraph::metrics::DEFAULT_TOP_HUBS;

pub const DEFAULT_FIT_SEED: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentPolicy {
    Whole,
    GiantWcc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    OnionNamespace,
    CrawledOnly,
}

impl From<Scope> for hsgraph::graph::LinkScope {
    fn from(s: Scope) -> Self {
        match s {
            Scope::OnionNamespace => hsgraph::graph::LinkScope::OnionNamespace,
            Scope::CrawledOnly => hsgraph::graph::LinkScope::CrawledOnly,
        }
    }
}

/// Which of the service graphs to analyze.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GraphSelection {
    pub snapshots: bool,
    pub intersection: bool,
    pub union: bool,
    pub directed: bool,
    pub undirected: bool,
}

impl Default for GraphSelection {
    fn default() -> Self {
        GraphSelection {
            snapshots: true,
            intersection: true,
            union: true,
            directed: true,
            undirected: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    /// Page-record files (JSON lines); snapshots are taken from the records.
    pub inputs: Vec<PathBuf>,
    /// Optional `service,class,language` CSV.
    pub labels: Option<PathBuf>,
    pub output: PathBuf,
    pub graphs: GraphSelection,
    /// Graph used for metrics, fits and communities. Bow-tie always uses
    /// the whole directed graph.
    pub component: ComponentPolicy,
    pub link_scope: Scope,
    pub weighted_rank: bool,
    pub seed_louvain: u64,
    pub seed_fit: u64,
    pub k_hubs: usize,
    pub min_tail: usize,
    /// Bootstrap replicates for the power-law goodness of fit; 0 disables it.
    pub bootstrap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            inputs: Vec::new(),
            labels: None,
            output: PathBuf::from("hsgraph-out"),
            graphs: GraphSelection::default(),
            component: ComponentPolicy::GiantWcc,
            link_scope: Scope::OnionNamespace,
            weighted_rank: true,
            seed_louvain: DEFAULT_LOUVAIN_SEED,
            seed_fit: DEFAULT_FIT_SEED,
            k_hubs: DEFAULT_TOP_HUBS,
            min_tail: 50,
            bootstrap: 0,
        }
    }
}

/// Splits `a.b=value`; the value is parsed as JSON, falling back to a string.
pub fn parse_override(s: &str) -> Result<(Vec<String>, Value), CliError> {
    let (key, raw) = s
        .split_once('=')
        .ok_or_else(|| CliError::usage(format!("override `{s}` is not key=value")))?;
    let key = key.trim();
    if key.is_empty() {
        return Err(CliError::usage(format!("override `{s}` has an empty key")));
    }
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    Ok((key.split('.').map(str::to_string).collect(), value))
}

/// Applies overrides to any serializable document and reads it back.
pub fn apply_overrides<T>(doc: &T, overrides: &[String]) -> Result<T, CliError>
where
    T: Serialize + for<'de> Deserialize<'de>,
{
    let mut v = serde_json::to_value(doc).map_err(|e| CliError::internal("config", e))?;
    for o in overrides {
        let (path, value) = parse_override(o)?;
        let mut slot = &mut v;
        for (i, part) in path.iter().enumerate() {
            let obj = slot
                .as_object_mut()
                .ok_or_else(|| CliError::usage(format!("`{}` is not a table", path[..i].join("."))))?;
            if !obj.contains_key(part) {
                return Err(CliError::usage(format!("unknown config key `{}`", path[..=i].join("."))));
            }
            slot = obj.get_mut(part).expect("checked above");
        }
        *slot = value;
    }
    serde_json::from_value(v).map_err(|e| CliError::usage(format!("invalid config: {e}")))
}

impl RunConfig {
    /// Reads a config file. Relative paths inside it are taken relative to
    /// the file's directory.
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("invalid config {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(""));
        cfg.rebase(base);
        Ok(cfg)
    }

    pub fn rebase(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        self.inputs.iter_mut().for_each(fix);
        if let Some(l) = self.labels.as_mut() {
            fix(l);
        }
        fix(&mut self.output);
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.inputs.is_empty() {
            return Err(CliError::usage("no input files configured"));
        }
        for p in self.inputs.iter().chain(self.labels.iter()) {
            if !p.is_file() {
                return Err(CliError::usage(format!("input {} does not exist", p.display())));
            }
        }
        let g = &self.graphs;
        if !(g.directed || g.undirected) || !(g.snapshots || g.intersection || g.union) {
            return Err(CliError::usage("graph selection is empty"));
        }
        if self.k_hubs == 0 {
            return Err(CliError::usage("k_hubs must be positive"));
        }
        if self.min_tail < 2 {
            return Err(CliError::usage("min_tail must be at least 2"));
        }
        Ok(())
    }

    /// The config as recorded in the output bundle: the output location is
    /// left out so that bundles written to different places compare equal.
    pub fn recorded(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("config serializes");
        v.as_object_mut().expect("object").remove("output");
        v
    }
}
