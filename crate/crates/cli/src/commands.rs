//! Subcommands and their flags.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hsgraph::bowtie::bowtie_decompose;
use hsgraph::community::{adjusted_mutual_information, louvain, LouvainOptions, Partition};
use hsgraph::fitting::{fit_report, FitOptions};
use hsgraph::graph::{read_graph, write_graph, ServiceGraph};
use hsgraph::ingest::{persistence_report, summarize_services, write_summaries_csv, LcRatio};
use hsgraph::metrics::{global_metrics, hub_reach_curve, vertex_metrics};
use hsgraph::stats::{gain_report, spearman_matrix, tag_prevalence};
use hsgraph::synth::{generate_corpus, CorpusConfig};

use crate::bundle::{json_bytes, write_atomic};
use crate::config::{apply_overrides, ComponentPolicy, GraphSelection, RunConfig, Scope};
use crate::error::{CliError, StageExt};
use crate::pipeline::{
    analysis_graph, build_graphs, by_snapshot, degree_samples, load_labels, load_pages, pooled_lcratios,
    rank_options, run_pipeline, GlobalArtifact, HubReachArtifact,
};

#[derive(Debug, Parser)]
#[command(name = "hsgraph", version, about = "Link-graph analysis of crawled onion services")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

/// Flags shared by every subcommand. When given they win over the config.
#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    #[arg(long, global = true, env = "HSGRAPH_SEED_LOUVAIN")]
    pub seed_louvain: Option<u64>,
    #[arg(long, global = true, env = "HSGRAPH_SEED_FIT")]
    pub seed_fit: Option<u64>,
    /// Number of hubs in the hub-reach curve.
    #[arg(long, global = true, env = "HSGRAPH_K_HUBS")]
    pub k_hubs: Option<usize>,
    /// Edge weights in PageRank and HITS.
    #[arg(long, global = true, env = "HSGRAPH_WEIGHTED_RANK")]
    pub weighted_rank: Option<Switch>,
}

impl GlobalOpts {
    pub fn apply(&self, cfg: &mut RunConfig) {
        if let Some(s) = self.seed_louvain {
            cfg.seed_louvain = s;
        }
        if let Some(s) = self.seed_fit {
            cfg.seed_fit = s;
        }
        if let Some(k) = self.k_hubs {
            cfg.k_hubs = k;
        }
        if let Some(w) = self.weighted_rank {
            cfg.weighted_rank = w == Switch::On;
        }
    }

    fn config(&self) -> RunConfig {
        let mut cfg = RunConfig::default();
        self.apply(&mut cfg);
        cfg
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Degree {
    In,
    Out,
    Total,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-service summaries and snapshot persistence.
    Ingest {
        #[arg(required = true)]
        pages: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Service graphs (per snapshot, intersection, union) as TSV files.
    Build {
        #[arg(required = true)]
        pages: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "onion-namespace")]
        scope: ScopeArg,
    },
    /// Global and per-vertex metrics of one graph.
    Metrics {
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Page files supplying the lcratio column.
        #[arg(long)]
        pages: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "giant-wcc")]
        component: ComponentArg,
    },
    /// Power-law and log-normal fits of a degree sequence or CSV column.
    Fit {
        /// A graph file, or a CSV file with `--column`.
        input: PathBuf,
        #[arg(long, value_enum, conflicts_with = "column")]
        degree: Option<Degree>,
        #[arg(long)]
        column: Option<String>,
        #[arg(long, default_value_t = 50)]
        min_tail: usize,
        #[arg(long, default_value_t = 0)]
        bootstrap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Louvain partition of a graph as `vertex,cluster` CSV.
    Communities {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// AMI of two partition files over their common vertices.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bow-tie decomposition of a directed graph.
    Bowtie {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Metric correlations, and with labels the tag prevalence and gains.
    Stats {
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        pages: Vec<PathBuf>,
        #[arg(long, value_enum, default_value = "giant-wcc")]
        component: ComponentArg,
    },
    /// The whole pipeline, driven by a config file and overrides.
    Run {
        #[arg(long)]
        config: Option<PathBuf>,
        /// `key=value` override on a dotted config path.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Page files, added to the configured inputs.
        #[arg(long = "input")]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes the planted synthetic corpus and a run config for it.
    Synth {
        #[arg(long)]
        out: PathBuf,
        /// `key=value` override on the generator config.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ScopeArg {
    OnionNamespace,
    CrawledOnly,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Self {
        match s {
            ScopeArg::OnionNamespace => Scope::OnionNamespace,
            ScopeArg::CrawledOnly => Scope::CrawledOnly,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ComponentArg {
    Whole,
    GiantWcc,
}

impl From<ComponentArg> for ComponentPolicy {
    fn from(c: ComponentArg) -> Self {
        match c {
            ComponentArg::Whole => ComponentPolicy::Whole,
            ComponentArg::GiantWcc => ComponentPolicy::GiantWcc,
        }
    }
}

fn io_err(stage: &str) -> impl Fn(io::Error) -> CliError + '_ {
    move |e| CliError::internal(stage, e)
}

pub fn load_graph(path: &Path) -> Result<ServiceGraph, CliError> {
    let f = File::open(path).map_err(|e| CliError::usage(format!("cannot open {}: {e}", path.display())))?;
    read_graph(BufReader::new(f)).map_err(|e| CliError::data("graph", format!("{}: {e}", path.display())))
}

fn load_partition(path: &Path) -> Result<Partition, CliError> {
    let f = File::open(path).map_err(|e| CliError::usage(format!("cannot open {}: {e}", path.display())))?;
    Partition::read_csv(BufReader::new(f)).map_err(|e| CliError::data("partition", format!("{}: {e}", path.display())))
}

/// Writes to `out` when given, else to stdout.
fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(p) => write_atomic(p, bytes).map_err(io_err("output")),
        None => io::stdout().write_all(bytes).map_err(io_err("output")),
    }
}

fn csv_bytes<E: std::fmt::Display>(stage: &str, f: impl FnOnce(&mut Vec<u8>) -> Result<(), E>) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    f(&mut buf).internal_in(stage)?;
    Ok(buf)
}

fn lcratios_from(pages: &[PathBuf]) -> Result<BTreeMap<String, LcRatio>, CliError> {
    if pages.is_empty() {
        return Ok(BTreeMap::new());
    }
    let pages = load_pages(pages)?;
    let summaries = summarize_services(&pages);
    let snaps: Vec<String> = by_snapshot(pages).into_keys().collect();
    Ok(pooled_lcratios(&summaries, &snaps))
}

/// Reads one CSV column as non-negative integers.
fn read_column(path: &Path, column: &str) -> Result<Vec<u64>, CliError> {
    let f = File::open(path).map_err(|e| CliError::usage(format!("cannot open {}: {e}", path.display())))?;
    let mut r = csv::Reader::from_reader(BufReader::new(f));
    let headers = r.headers().data_in("fit")?.clone();
    let idx = headers
        .iter()
        .position(|h| h == column)
        .ok_or_else(|| CliError::usage(format!("{} has no column `{column}`", path.display())))?;
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.data_in("fit")?;
        let cell = rec.get(idx).unwrap_or("").trim();
        let v: u64 = cell
            .parse()
            .map_err(|_| CliError::data("fit", format!("line {}: `{cell}` is not a non-negative integer", i + 2)))?;
        out.push(v);
    }
    Ok(out)
}

#[derive(Serialize)]
struct AmiOutput {
    common_vertices: usize,
    clusters_a: usize,
    clusters_b: usize,
    ami: f64,
}

pub fn execute(cli: Cli) -> Result<(), CliError> {
    let g = &cli.global;
    match cli.command {
        Command::Ingest { pages, out } => {
            let pages = load_pages(&pages)?;
            let summaries = summarize_services(&pages);
            let csv = csv_bytes("ingest", |b| write_summaries_csv(summaries.values(), b))?;
            write_atomic(&out.join("summaries.csv"), &csv).map_err(io_err("output"))?;
            match persistence_report(&pages) {
                Ok(r) => write_atomic(&out.join("persistence.json"), &json_bytes(&r)).map_err(io_err("output"))?,
                Err(e) => eprintln!("note: persistence skipped: {e}"),
            }
        }
        Command::Build { pages, out, scope } => {
            let mut cfg = g.config();
            cfg.link_scope = scope.into();
            cfg.graphs = GraphSelection::default();
            let snaps = by_snapshot(load_pages(&pages)?);
            let mut skipped = Vec::new();
            for ng in build_graphs(&snaps, &cfg, &mut skipped)? {
                let tsv = csv_bytes("graphs", |b| write_graph(&ng.graph, b))?;
                write_atomic(&out.join(format!("{}.tsv", ng.name)), &tsv).map_err(io_err("output"))?;
            }
            for s in skipped {
                eprintln!("note: {} skipped: {}", s.stage, s.reason);
            }
        }
        Command::Metrics { graph, out, pages, component } => {
            let cfg = g.config();
            let whole = load_graph(&graph)?;
            let an = analysis_graph(&whole, component.into()).data_in("metrics")?;
            let name = graph.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let global = GlobalArtifact {
                graph: &name,
                component: component.into(),
                metrics: global_metrics::<f64>(&an).data_in("metrics")?,
            };
            write_atomic(&out.join("global.json"), &json_bytes(&global)).map_err(io_err("output"))?;
            let vm = vertex_metrics::<f64>(&an, &lcratios_from(&pages)?, rank_options(cfg.weighted_rank));
            let csv = csv_bytes("metrics", |b| vm.write_csv(b))?;
            write_atomic(&out.join("vertices.csv"), &csv).map_err(io_err("output"))?;
            let reach = HubReachArtifact {
                graph: &name,
                k: cfg.k_hubs,
                curve: hub_reach_curve::<f64>(&whole, cfg.k_hubs).data_in("metrics")?,
            };
            write_atomic(&out.join("hub_reach.json"), &json_bytes(&reach)).map_err(io_err("output"))?;
        }
        Command::Fit { input, degree, column, min_tail, bootstrap, out } => {
            let cfg = g.config();
            let sample: Vec<u64> = match (degree, column) {
                (_, Some(col)) => read_column(&input, &col)?.into_iter().filter(|&x| x > 0).collect(),
                (deg, None) => {
                    let graph = load_graph(&input)?;
                    let want = match deg {
                        Some(Degree::In) => "in",
                        Some(Degree::Out) => "out",
                        Some(Degree::Total) | None => "total",
                    };
                    if want == "total" && graph.is_directed() {
                        (0..graph.n()).map(|v| graph.degree(v) as u64).filter(|&d| d > 0).collect()
                    } else {
                        degree_samples(&graph)
                            .into_iter()
                            .find(|(k, _)| *k == want)
                            .map(|(_, s)| s)
                            .ok_or_else(|| CliError::usage(format!("undirected graphs have no {want}-degree")))?
                    }
                }
            };
            let opts = FitOptions { min_tail, ..FitOptions::default() };
            let boot = (bootstrap > 0).then_some((bootstrap, cfg.seed_fit));
            let report = fit_report::<f64>(&sample, &opts, boot).data_in("fit")?;
            emit(out.as_deref(), &json_bytes(&report))?;
        }
        Command::Communities { graph, out } => {
            let cfg = g.config();
            let graph = load_graph(&graph)?;
            let opts = LouvainOptions { seed: cfg.seed_louvain, ..LouvainOptions::default() };
            let p = louvain::<f64>(&graph, &opts);
            let csv = csv_bytes("communities", |b| p.write_csv(b))?;
            emit(out.as_deref(), &csv)?;
        }
        Command::Compare { a, b, out } => {
            let (pa, pb) = load_partition(&a)?.on_common_vertices(&load_partition(&b)?);
            if pa.is_empty() {
                return Err(CliError::data("compare", "the partitions share no vertex"));
            }
            let res = AmiOutput {
                common_vertices: pa.len(),
                clusters_a: pa.cluster_count(),
                clusters_b: pb.cluster_count(),
                ami: adjusted_mutual_information::<f64>(&pa, &pb).data_in("compare")?,
            };
            emit(out.as_deref(), &json_bytes(&res))?;
        }
        Command::Bowtie { graph, out } => {
            let graph = load_graph(&graph)?;
            let b = bowtie_decompose(&graph).data_in("bowtie")?;
            emit(out.as_deref(), &json_bytes(&b.report()))?;
        }
        Command::Stats { graph, out, labels, pages, component } => {
            let cfg = g.config();
            let whole = load_graph(&graph)?;
            let an = analysis_graph(&whole, component.into()).data_in("stats")?;
            let vm = vertex_metrics::<f64>(&an, &lcratios_from(&pages)?, rank_options(cfg.weighted_rank));
            let csv = csv_bytes("correlation", |b| spearman_matrix(&vm).write_csv(b))?;
            write_atomic(&out.join("correlation.csv"), &csv).map_err(io_err("output"))?;
            if let Some(path) = labels {
                let labels = load_labels(&path)?;
                let prev = tag_prevalence(&labels, &an).data_in("prevalence")?;
                write_atomic(&out.join("prevalence.json"), &json_bytes(&prev)).map_err(io_err("output"))?;
                let csv = csv_bytes("gain", |b| gain_report(&vm, &labels).write_csv(b))?;
                write_atomic(&out.join("gain.csv"), &csv).map_err(io_err("output"))?;
            }
        }
        Command::Run { config, set, inputs, labels, out } => {
            let mut cfg = match &config {
                Some(p) => RunConfig::load(p)?,
                None => RunConfig::default(),
            };
            cfg = apply_overrides(&cfg, &set)?;
            cfg.inputs.extend(inputs);
            if labels.is_some() {
                cfg.labels = labels;
            }
            if let Some(o) = out {
                cfg.output = o;
            }
            g.apply(&mut cfg);
            let manifest = run_pipeline(&cfg)?;
            eprintln!(
                "wrote {} artifacts for {} graphs to {}",
                manifest.artifacts.len(),
                manifest.graphs.len(),
                cfg.output.display()
            );
        }
        Command::Synth { out, set } => write_synth(&out, &apply_overrides(&CorpusConfig::default(), &set)?)?,
    }
    Ok(())
}

/// Run config written next to a synthetic corpus.
pub const SYNTH_RUN_CONFIG: &str = "run.json";

/// Writes `<snapshot>.jsonl` per snapshot, `labels.csv`, `truth.json`,
/// `corpus.json` and a run config pointing at them.
pub fn write_synth(out: &Path, cfg: &CorpusConfig) -> Result<(), CliError> {
    if cfg.snapshots.len() < 2 || cfg.services <= 2 * cfg.community_size + 1 || !(0.0..=1.0).contains(&cfg.retention) {
        return Err(CliError::usage("corpus config needs two snapshots, room for both communities and a retention in [0, 1]"));
    }
    let corpus = generate_corpus(cfg);
    fs::create_dir_all(out).map_err(io_err("output"))?;
    let mut inputs = Vec::new();
    for (snap, pages) in &corpus.pages {
        let file = format!("{}.jsonl", crate::pipeline::slug(snap));
        let text: String = pages.iter().map(|p| p.to_json_line() + "\n").collect();
        write_atomic(&out.join(&file), text.as_bytes()).map_err(io_err("output"))?;
        inputs.push(PathBuf::from(file));
    }
    let csv = csv_bytes("synth", |b| corpus.labels.write_csv(b))?;
    write_atomic(&out.join("labels.csv"), &csv).map_err(io_err("output"))?;
    write_atomic(&out.join("truth.json"), &json_bytes(&corpus.truth)).map_err(io_err("output"))?;
    write_atomic(&out.join("corpus.json"), &json_bytes(cfg)).map_err(io_err("output"))?;
    let run = RunConfig {
        inputs,
        labels: Some("labels.csv".into()),
        output: "out".into(),
        ..RunConfig::default()
    };
    write_atomic(&out.join(SYNTH_RUN_CONFIG), &json_bytes(&run)).map_err(io_err("output"))?;
    Ok(())
}

/// Parses `args` and runs; returns the process exit status.
pub fn main_with(args: impl IntoIterator<Item = impl Into<OsString> + Clone>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { crate::ExitCode::Usage as i32 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code() as i32
        }
    }
}
