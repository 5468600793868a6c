//! End-to-end run: ingest, graphs, per-graph analyses, cross-graph
//! comparisons and the manifest.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use hsgraph::bowtie::{bowtie_decompose, BowTieReport};
use hsgraph::community::{adjusted_mutual_information, cluster_size_distribution, louvain, modularity, LouvainOptions, Partition};
use hsgraph::fitting::{fit_report, FitError, FitOptions};
use hsgraph::graph::{build_dsg, giant_wcc, intersect, to_usg, union, write_graph, ServiceGraph};
use hsgraph::ingest::{parse_pages, persistence_report, summarize_services, write_summaries_csv, LcRatio, PageRecord, SummaryKey, ServiceSummary};
use hsgraph::metrics::{global_metrics, hub_reach_curve, vertex_metrics, RankOptions};
use hsgraph::stats::{gain_report, spearman_matrix, tag_prevalence, LabelAttribute, LabelSet, StatsError};
use hsgraph::{FitReport, GlobalMetrics};

use crate::bundle::{json_bytes, Artifact, Bundle, Staging, MANIFEST};
use crate::config::{ComponentPolicy, RunConfig};
use crate::error::{CliError, StageExt};

pub const TOOL: &str = "hsgraph";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Skipped {
    pub stage: String,
    pub reason: String,
}

impl Skipped {
    fn new(stage: impl Into<String>, reason: impl ToString) -> Self {
        Skipped {
            stage: stage.into(),
            reason: reason.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub snapshots: Vec<String>,
    pub graphs: Vec<String>,
    pub stages: Vec<String>,
    pub skipped: Vec<Skipped>,
    pub artifacts: Vec<Artifact>,
}

/// A service graph with its file-friendly name, e.g. `dsg-2017-03`.
#[derive(Debug, Clone)]
pub struct NamedGraph {
    pub name: String,
    pub graph: ServiceGraph,
    /// Snapshots whose summaries feed the lcratio column.
    pub snapshots: Vec<String>,
}

/// Replaces characters that do not belong in file names.
pub fn slug(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.') { c } else { '_' })
        .collect()
}

pub fn load_pages(paths: &[impl AsRef<Path>]) -> Result<Vec<PageRecord>, CliError> {
    let mut pages = Vec::new();
    for p in paths {
        let p = p.as_ref();
        let f = File::open(p).map_err(|e| CliError::usage(format!("cannot open {}: {e}", p.display())))?;
        let mut part = parse_pages(BufReader::new(f)).map_err(|e| CliError::data("ingest", format!("{}: {e}", p.display())))?;
        pages.append(&mut part);
    }
    if pages.is_empty() {
        return Err(CliError::data("ingest", "no page records in the inputs"));
    }
    Ok(pages)
}

pub fn load_labels(path: &Path) -> Result<LabelSet, CliError> {
    let f = File::open(path).map_err(|e| CliError::usage(format!("cannot open {}: {e}", path.display())))?;
    LabelSet::read_csv(BufReader::new(f)).map_err(|e| CliError::data("labels", format!("{}: {e}", path.display())))
}

pub fn by_snapshot(pages: Vec<PageRecord>) -> BTreeMap<String, Vec<PageRecord>> {
    let mut out: BTreeMap<String, Vec<PageRecord>> = BTreeMap::new();
    for p in pages {
        out.entry(p.snapshot_id.clone()).or_default().push(p);
    }
    out
}

/// lcratio per service, pooled (sum of links over sum of chars) across the
/// given snapshots.
pub fn pooled_lcratios(
    summaries: &BTreeMap<SummaryKey, ServiceSummary>,
    snapshots: &[String],
) -> BTreeMap<String, LcRatio> {
    let mut acc: BTreeMap<String, (u64, u64)> = BTreeMap::new();
    for s in summaries.values().filter(|s| snapshots.contains(&s.snapshot_id)) {
        let e = acc.entry(s.service_id.clone()).or_default();
        e.0 += s.link_count;
        e.1 += s.char_count;
    }
    acc.into_iter()
        .map(|(svc, (links, chars))| (svc, hsgraph::ingest::lcratio(links, chars)))
        .collect()
}

/// Per-snapshot DSGs and USGs plus the selected intersections and unions,
/// directed graphs first.
pub fn build_graphs(
    snaps: &BTreeMap<String, Vec<PageRecord>>,
    cfg: &RunConfig,
    skipped: &mut Vec<Skipped>,
) -> Result<Vec<NamedGraph>, CliError> {
    let stage = "graphs";
    let ids: Vec<String> = snaps.keys().cloned().collect();
    let mut dsgs = Vec::new();
    for pages in snaps.values() {
        dsgs.push(build_dsg(pages, cfg.link_scope.into()).data_in(stage)?);
    }
    let usgs: Vec<ServiceGraph> = dsgs.iter().map(to_usg).collect::<Result<_, _>>().internal_in(stage)?;

    let sel = &cfg.graphs;
    let mut out = Vec::new();
    for (prefix, family, wanted) in [("dsg", &dsgs, sel.directed), ("usg", &usgs, sel.undirected)] {
        if !wanted {
            continue;
        }
        if sel.snapshots {
            for (id, g) in ids.iter().zip(family.iter()) {
                out.push(NamedGraph {
                    name: format!("{prefix}-{}", slug(id)),
                    graph: g.clone(),
                    snapshots: vec![id.clone()],
                });
            }
        }
        let refs: Vec<&ServiceGraph> = family.iter().collect();
        if sel.intersection {
            if refs.len() < 2 {
                skipped.push(Skipped::new(format!("graphs:{prefix}-intersection"), "fewer than two snapshots"));
            } else {
                out.push(NamedGraph {
                    name: format!("{prefix}-intersection"),
                    graph: intersect(&refs).data_in(stage)?,
                    snapshots: ids.clone(),
                });
            }
        }
        if sel.union {
            out.push(NamedGraph {
                name: format!("{prefix}-union"),
                graph: union(&refs).data_in(stage)?,
                snapshots: ids.clone(),
            });
        }
    }
    for g in &out {
        if g.graph.m() == 0 {
            return Err(CliError::data(stage, format!("{}: empty graph (no edges)", g.name)));
        }
    }
    Ok(out)
}

/// Graph the per-graph analyses run on.
pub fn analysis_graph(g: &ServiceGraph, policy: ComponentPolicy) -> Result<ServiceGraph, hsgraph::graph::GraphError> {
    match policy {
        ComponentPolicy::Whole => Ok(g.clone()),
        ComponentPolicy::GiantWcc => giant_wcc(g),
    }
}

#[derive(Debug, Serialize)]
pub struct GlobalArtifact<'a> {
    pub graph: &'a str,
    pub component: ComponentPolicy,
    pub metrics: GlobalMetrics,
}

#[derive(Debug, Serialize)]
pub struct HubReachArtifact<'a> {
    pub graph: &'a str,
    pub k: usize,
    pub curve: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct FitArtifact<'a> {
    pub graph: &'a str,
    pub degree: &'a str,
    /// Vertices with positive degree; zeros cannot enter a power-law fit.
    pub n_positive: usize,
    pub fit: FitReport,
}

#[derive(Debug, Serialize)]
pub struct CommunityArtifact<'a> {
    pub graph: &'a str,
    pub seed: u64,
    pub clusters: usize,
    pub modularity: f64,
    pub sizes: Vec<usize>,
}

#[derive(Debug, Serialize)]
pub struct BowTieArtifact<'a> {
    pub graph: &'a str,
    #[serde(flatten)]
    pub report: BowTieReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct LabelAmi {
    pub graph: String,
    pub attribute: &'static str,
    pub vertices: usize,
    pub ami: f64,
}

#[derive(Debug, Serialize)]
pub struct AmiMatrix {
    pub graphs: Vec<String>,
    /// AMI of the Louvain partitions restricted to their common vertices.
    pub ami: Vec<Vec<f64>>,
    pub common_vertices: Vec<Vec<usize>>,
}

/// Degree samples fitted for a graph: in/out for directed, total otherwise.
pub fn degree_samples(g: &ServiceGraph) -> Vec<(&'static str, Vec<u64>)> {
    let col = |f: &dyn Fn(usize) -> usize| (0..g.n()).map(|v| f(v) as u64).filter(|&d| d > 0).collect::<Vec<u64>>();
    if g.is_directed() {
        vec![("in", col(&|v| g.in_degree(v))), ("out", col(&|v| g.out_degree(v)))]
    } else {
        vec![("total", col(&|v| g.degree(v)))]
    }
}

/// Whether a fit failure means "not enough data" rather than bad input.
pub fn fit_is_skippable(e: &FitError) -> bool {
    matches!(
        e,
        FitError::EmptySample | FitError::InsufficientTail { .. } | FitError::DegenerateTail { .. } | FitError::EmptyTail { .. }
    )
}

pub fn rank_options(weighted: bool) -> RankOptions {
    RankOptions {
        weighted,
        ..RankOptions::default()
    }
}

struct GraphResult {
    partition: Partition,
    skipped: Vec<Skipped>,
    label_ami: Vec<LabelAmi>,
}

fn label_attr_name(a: LabelAttribute) -> &'static str {
    match a {
        LabelAttribute::Class => "class",
        LabelAttribute::Type => "type",
        LabelAttribute::Language => "language",
    }
}

fn analyze_graph(
    ng: &NamedGraph,
    cfg: &RunConfig,
    lcratios: &BTreeMap<String, LcRatio>,
    labels: Option<&LabelSet>,
    bundle: &Bundle,
) -> Result<GraphResult, CliError> {
    let name = ng.name.as_str();
    let io = |e: std::io::Error| CliError::internal(format!("output:{name}"), e);
    let mut skipped = Vec::new();

    let stage = format!("metrics:{name}");
    let g = analysis_graph(&ng.graph, cfg.component).data_in(&stage)?;
    let global = global_metrics::<f64>(&g).data_in(&stage)?;
    bundle
        .write_json(
            &format!("metrics/{name}/global.json"),
            &GlobalArtifact {
                graph: name,
                component: cfg.component,
                metrics: global,
            },
        )
        .map_err(io)?;
    let vm = vertex_metrics::<f64>(&g, lcratios, rank_options(cfg.weighted_rank));
    let mut buf = Vec::new();
    vm.write_csv(&mut buf).internal_in(&stage)?;
    bundle.write(&format!("metrics/{name}/vertices.csv"), &buf).map_err(io)?;
    let curve = hub_reach_curve::<f64>(&ng.graph, cfg.k_hubs).data_in(&stage)?;
    bundle
        .write_json(
            &format!("metrics/{name}/hub_reach.json"),
            &HubReachArtifact {
                graph: name,
                k: cfg.k_hubs,
                curve,
            },
        )
        .map_err(io)?;

    let opts = FitOptions {
        min_tail: cfg.min_tail,
        ..FitOptions::default()
    };
    let boot = (cfg.bootstrap > 0).then_some((cfg.bootstrap, cfg.seed_fit));
    for (kind, sample) in degree_samples(&g) {
        let stage = format!("fitting:{name}:{kind}");
        match fit_report::<f64>(&sample, &opts, boot) {
            Ok(fit) => bundle
                .write_json(
                    &format!("fits/{name}/{kind}.json"),
                    &FitArtifact {
                        graph: name,
                        degree: kind,
                        n_positive: sample.len(),
                        fit,
                    },
                )
                .map_err(io)?,
            Err(e) if fit_is_skippable(&e) => skipped.push(Skipped::new(stage, e)),
            Err(e) => return Err(CliError::data(stage, e)),
        }
    }

    let stage = format!("communities:{name}");
    let lopts = LouvainOptions {
        seed: cfg.seed_louvain,
        ..LouvainOptions::default()
    };
    let partition = louvain::<f64>(&g, &lopts);
    let q: f64 = modularity(&g, &partition).internal_in(&stage)?;
    let mut buf = Vec::new();
    partition.write_csv(&mut buf).internal_in(&stage)?;
    bundle.write(&format!("communities/{name}/partition.csv"), &buf).map_err(io)?;
    bundle
        .write_json(
            &format!("communities/{name}/summary.json"),
            &CommunityArtifact {
                graph: name,
                seed: cfg.seed_louvain,
                clusters: partition.cluster_count(),
                modularity: q,
                sizes: cluster_size_distribution(&partition),
            },
        )
        .map_err(io)?;

    if ng.graph.is_directed() {
        let stage = format!("bowtie:{name}");
        let b = bowtie_decompose(&ng.graph).data_in(&stage)?;
        bundle
            .write_json(
                &format!("bowtie/{name}.json"),
                &BowTieArtifact {
                    graph: name,
                    report: b.report(),
                },
            )
            .map_err(io)?;
    }

    let stage = format!("correlation:{name}");
    let mut buf = Vec::new();
    spearman_matrix(&vm).write_csv(&mut buf).internal_in(&stage)?;
    bundle.write(&format!("stats/{name}/correlation.csv"), &buf).map_err(io)?;

    let mut label_ami = Vec::new();
    if let Some(labels) = labels {
        let stage = format!("prevalence:{name}");
        match tag_prevalence(labels, &g) {
            Ok(p) => bundle.write_json(&format!("stats/{name}/prevalence.json"), &p).map_err(io)?,
            Err(StatsError::NoLabeledVertices) => {
                skipped.push(Skipped::new(stage, StatsError::NoLabeledVertices));
                return Ok(GraphResult {
                    partition,
                    skipped,
                    label_ami,
                });
            }
            Err(e) => return Err(CliError::data(stage, e)),
        }
        let stage = format!("gain:{name}");
        let mut buf = Vec::new();
        gain_report(&vm, labels).write_csv(&mut buf).internal_in(&stage)?;
        bundle.write(&format!("stats/{name}/gain.csv"), &buf).map_err(io)?;

        let stage = format!("label-ami:{name}");
        for attr in [LabelAttribute::Class, LabelAttribute::Type, LabelAttribute::Language] {
            let lp = labels.partition(g.vertices(), attr);
            let (a, b) = partition.on_common_vertices(&lp);
            let ami: f64 = adjusted_mutual_information(&a, &b).internal_in(&stage)?;
            label_ami.push(LabelAmi {
                graph: name.to_string(),
                attribute: label_attr_name(attr),
                vertices: a.len(),
                ami,
            });
        }
    }
    Ok(GraphResult {
        partition,
        skipped,
        label_ami,
    })
}

/// Pairwise AMI of partitions over their common vertices; NaN when two
/// partitions share no vertex.
pub fn ami_matrix(names: &[String], parts: &[Partition]) -> Result<AmiMatrix, CliError> {
    let k = parts.len();
    let cells: Vec<(usize, usize, f64, usize)> = (0..k)
        .flat_map(|i| (i..k).map(move |j| (i, j)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(i, j)| {
            let (a, b) = parts[i].on_common_vertices(&parts[j]);
            let ami = if a.is_empty() {
                f64::NAN
            } else {
                adjusted_mutual_information::<f64>(&a, &b).internal_in("ami")?
            };
            Ok((i, j, ami, a.len()))
        })
        .collect::<Result<_, CliError>>()?;
    let mut ami = vec![vec![0.0; k]; k];
    let mut common = vec![vec![0; k]; k];
    for (i, j, v, n) in cells {
        ami[i][j] = v;
        ami[j][i] = v;
        common[i][j] = n;
        common[j][i] = n;
    }
    Ok(AmiMatrix {
        graphs: names.to_vec(),
        ami,
        common_vertices: common,
    })
}

/// Runs every stage and replaces `cfg.output` with the finished bundle.
pub fn run_pipeline(cfg: &RunConfig) -> Result<Manifest, CliError> {
    cfg.validate()?;
    let staging = Staging::begin(&cfg.output).map_err(CliError::Usage)?;
    let bundle = Bundle::new(staging.path()).internal_in("output")?;
    let io = |e: std::io::Error| CliError::internal("output", e);
    let mut stages = Vec::new();
    let mut skipped = Vec::new();

    bundle.write_json("config.json", &cfg.recorded()).map_err(io)?;

    // ingest
    let pages = load_pages(&cfg.inputs)?;
    let summaries = summarize_services(&pages);
    let mut buf = Vec::new();
    write_summaries_csv(summaries.values(), &mut buf).internal_in("ingest")?;
    bundle.write("ingest/summaries.csv", &buf).map_err(io)?;
    let snaps = by_snapshot(pages);
    let snapshot_ids: Vec<String> = snaps.keys().cloned().collect();
    if snaps.len() >= 2 {
        let all: Vec<PageRecord> = snaps.values().flatten().cloned().collect();
        let report = persistence_report(&all).data_in("ingest")?;
        bundle.write_json("ingest/persistence.json", &report).map_err(io)?;
    } else {
        skipped.push(Skipped::new("ingest:persistence", "fewer than two snapshots"));
    }
    stages.push("ingest".to_string());
    let labels = cfg.labels.as_deref().map(load_labels).transpose()?;

    // graphs
    let graphs = build_graphs(&snaps, cfg, &mut skipped)?;
    for ng in &graphs {
        let mut buf = Vec::new();
        write_graph(&ng.graph, &mut buf).internal_in("graphs")?;
        bundle.write(&format!("graphs/{}.tsv", ng.name), &buf).map_err(io)?;
    }
    stages.push("graphs".to_string());

    // per-graph analyses, concurrently; the first failure in graph order wins
    let results: Vec<Result<GraphResult, CliError>> = graphs
        .par_iter()
        .map(|ng| {
            let lc = pooled_lcratios(&summaries, &ng.snapshots);
            analyze_graph(ng, cfg, &lc, labels.as_ref(), &bundle)
        })
        .collect();
    let mut parts = Vec::new();
    let mut label_ami = Vec::new();
    for r in results {
        let r = r?;
        parts.push(r.partition);
        skipped.extend(r.skipped);
        label_ami.extend(r.label_ami);
    }
    stages.extend(["metrics", "fitting", "communities"].map(String::from));
    if graphs.iter().any(|g| g.graph.is_directed()) {
        stages.push("bowtie".into());
    } else {
        skipped.push(Skipped::new("bowtie", "no directed graph selected"));
    }
    stages.push("correlation".into());

    let names: Vec<String> = graphs.iter().map(|g| g.name.clone()).collect();
    bundle.write_json("communities/ami.json", &ami_matrix(&names, &parts)?).map_err(io)?;
    stages.push("ami".into());

    if labels.is_some() {
        bundle.write_json("stats/label_ami.json", &label_ami).map_err(io)?;
        stages.extend(["prevalence", "gain", "label-ami"].map(String::from));
    } else {
        for s in ["prevalence", "gain", "label-ami"] {
            skipped.push(Skipped::new(s, "no label file configured"));
        }
    }

    let manifest = Manifest {
        tool: TOOL.into(),
        version: VERSION.into(),
        snapshots: snapshot_ids,
        graphs: names,
        stages,
        skipped,
        artifacts: bundle.artifacts(),
    };
    crate::bundle::write_atomic(&bundle.root().join(MANIFEST), &json_bytes(&manifest)).map_err(io)?;
    staging.commit().internal_in("output")?;
    Ok(manifest)
}
