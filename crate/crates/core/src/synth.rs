//! Seeded generators: random digraphs for tests and a planted multi-snapshot
//! crawl corpus.
//!
//! The corpus plants one persistent out-hub, two persistent communities held
//! together by reciprocated links (the only reciprocated links in the
//! corpus), a fixed all-snapshot retention share, power-law out-degrees and
//! fitness-driven in-degrees.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::fitting::PowerLawSampler;
use crate::graph::{Directedness, ServiceGraph};
use crate::ingest::PageRecord;
use crate::stats::{ContentClass, Label, LabelSet, CLASSES};

/// G(n, p) digraph (or graph) on vertices `v000`, `v001`, ... with unit weights.
pub fn random_graph<R: Rng + ?Sized>(d: Directedness, n: usize, p: f64, rng: &mut R) -> ServiceGraph {
    let name = |i: usize| format!("v{i:03}");
    let mut edges = Vec::new();
    for u in 0..n {
        let start = if d == Directedness::Directed { 0 } else { u + 1 };
        for v in start..n {
            if u != v && rng.random::<f64>() < p {
                edges.push((name(u), name(v), 1));
            }
        }
    }
    ServiceGraph::from_edges(d, (0..n).map(name), edges).expect("generated edges are valid")
}

/// Random 16-character v2-style onion id.
pub fn onion_id<R: Rng + ?Sized>(rng: &mut R) -> String {
    const ALPHABET: &[u8] = b"abcdefghijklmnopqrstuvwxyz234567";
    let mut s: String = (0..16)
        .map(|_| ALPHABET[rng.random_range(0..ALPHABET.len())] as char)
        .collect();
    s.push_str(".onion");
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusConfig {
    pub seed: u64,
    pub services: usize,
    pub snapshots: Vec<String>,
    /// Share of services present in every snapshot.
    pub retention: f64,
    /// Share of the other services the hub links to.
    pub hub_coverage: f64,
    pub community_size: usize,
    /// Probability that two members of a community link each other.
    pub community_density: f64,
    /// Share of ordinary services with background out-links; the others
    /// only receive them.
    pub linker_share: f64,
    pub out_alpha: f64,
    pub in_alpha: f64,
    /// Probability that a background link survives into a given snapshot.
    pub link_retention: f64,
    /// Share of services carrying a content label.
    pub labeled_share: f64,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        CorpusConfig {
            seed: 2017,
            services: 1500,
            snapshots: vec!["2017-03".into(), "2017-04".into(), "2017-05".into()],
            retention: 0.7,
            hub_coverage: 0.8,
            community_size: 40,
            community_density: 0.9,
            linker_share: 0.5,
            out_alpha: 1.6,
            in_alpha: 2.8,
            link_retention: 0.9,
            labeled_share: 0.6,
        }
    }
}

/// What the generator planted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedTruth {
    pub hub: String,
    pub community_a: Vec<String>,
    pub community_b: Vec<String>,
    /// Services present in every snapshot.
    pub persistent: Vec<String>,
    /// Snapshot membership of every service.
    pub membership: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub config: CorpusConfig,
    /// Page records per snapshot, in config order.
    pub pages: Vec<(String, Vec<PageRecord>)>,
    pub labels: LabelSet,
    pub truth: PlantedTruth,
}

struct Service {
    id: String,
    present: Vec<bool>,
    /// Current page tree as (path, depth).
    tree: Vec<(String, u32)>,
    stable_tree: bool,
    stable_chars: bool,
}

fn page_tree<R: Rng + ?Sized>(rng: &mut R) -> Vec<(String, u32)> {
    let pages = rng.random_range(1..=6);
    let mut tree = vec![("/".to_string(), 0)];
    for i in 1..pages {
        if i > 2 && rng.random::<f64>() < 0.4 {
            tree.push((format!("/p{}/q{i}", i % 2 + 1), 2));
        } else {
            tree.push((format!("/p{i}"), 1));
        }
    }
    tree
}

/// Generates the planted corpus. Deterministic for a given config.
pub fn generate_corpus(cfg: &CorpusConfig) -> Corpus {
    assert!(cfg.snapshots.len() >= 2, "need at least two snapshots");
    assert!(cfg.services > 2 * cfg.community_size + 1, "too few services");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let s = cfg.snapshots.len();
    let n = cfg.services;

    let mut ids = BTreeSet::new();
    while ids.len() < n {
        ids.insert(onion_id(&mut rng));
    }
    let mut ids: Vec<String> = ids.into_iter().collect();
    ids.shuffle(&mut rng);

    // roles by position: 0 = hub, then A, then B, then the rest
    let k = cfg.community_size;
    let hub = 0usize;
    let comm_a: Vec<usize> = (1..=k).collect();
    let comm_b: Vec<usize> = (k + 1..=2 * k).collect();

    // membership: planted roles and a retention share persist; the rest
    // cycle through every proper non-empty subset of snapshots
    let n_persistent = (cfg.retention * n as f64).round() as usize;
    assert!(n_persistent > 2 * k, "retention too small for the planted roles");
    let partial_patterns: Vec<Vec<bool>> = (1..(1u32 << s) - 1)
        .map(|mask| (0..s).map(|b| mask & (1 << b) != 0).collect())
        .collect();
    let mut services: Vec<Service> = Vec::with_capacity(n);
    for (i, id) in ids.iter().enumerate() {
        let present = if i < n_persistent {
            vec![true; s]
        } else {
            partial_patterns[(i - n_persistent) % partial_patterns.len()].clone()
        };
        services.push(Service {
            id: id.clone(),
            present,
            tree: page_tree(&mut rng),
            stable_tree: rng.random::<f64>() < 0.6,
            stable_chars: rng.random::<f64>() < 0.3,
        });
    }

    // directed link plan; `planned` guards against accidental reciprocity
    let mut planned: HashSet<(usize, usize)> = HashSet::new();
    let mut links: Vec<(usize, usize)> = Vec::new();
    let mut persistent_link: Vec<bool> = Vec::new();
    let mut add = |u: usize, v: usize, persistent: bool, planned: &mut HashSet<(usize, usize)>| {
        if u != v && planned.insert((u, v)) {
            links.push((u, v));
            persistent_link.push(persistent);
        }
    };

    for comm in [&comm_a, &comm_b] {
        for (x, &u) in comm.iter().enumerate() {
            for &v in &comm[x + 1..] {
                if rng.random::<f64>() < cfg.community_density {
                    add(u, v, true, &mut planned);
                    add(v, u, true, &mut planned);
                }
            }
        }
    }
    // hub <-> A
    for &a in &comm_a {
        add(hub, a, true, &mut planned);
        add(a, hub, true, &mut planned);
    }
    // hub -> a share of everyone else
    let mut others: Vec<usize> = (2 * k + 1..n).chain(comm_b.iter().copied()).collect();
    others.shuffle(&mut rng);
    let n_hub = (cfg.hub_coverage * others.len() as f64).round() as usize;
    for &v in &others[..n_hub] {
        add(hub, v, true, &mut planned);
    }

    // background: linkers with power-law out-degree point at non-linkers
    // chosen proportionally to fitness, so background links form no cycles;
    // the hub and community A are never targets
    let ordinary: Vec<usize> = (k + 1..n).collect();
    let (linkers, sinks): (Vec<usize>, Vec<usize>) =
        ordinary.iter().partition(|_| rng.random::<f64>() < cfg.linker_share);
    let fitness: Vec<f64> = sinks
        .iter()
        .map(|_| (1.0 - rng.random::<f64>()).powf(-1.0 / (cfg.in_alpha - 1.0)))
        .collect();
    let pick = WeightedIndex::new(&fitness).expect("positive fitness");
    let cap = sinks.len() / 4;
    let out_degree = PowerLawSampler::new(cfg.out_alpha, 1);
    for &u in &linkers {
        let d = (out_degree.sample(&mut rng) as usize).min(cap);
        let mut made = 0;
        let mut attempts = 0;
        while made < d && attempts < 20 * d {
            attempts += 1;
            let v = sinks[pick.sample(&mut rng)];
            if planned.contains(&(v, u)) || planned.contains(&(u, v)) {
                continue;
            }
            add(u, v, false, &mut planned);
            made += 1;
        }
    }

    // materialise pages per snapshot
    let mut out_by_service: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for (&(u, v), &p) in links.iter().zip(&persistent_link) {
        out_by_service[u].push((v, p));
    }
    let mut pages = Vec::with_capacity(s);
    let mut chars: Vec<Vec<u64>> = services
        .iter()
        .map(|svc| svc.tree.iter().map(|_| rng.random_range(300..20_000)).collect())
        .collect();
    for (si, snap) in cfg.snapshots.iter().enumerate() {
        let mut recs = Vec::new();
        for u in 0..n {
            if !services[u].present[si] {
                continue;
            }
            if si > 0 && !services[u].stable_tree {
                services[u].tree = page_tree(&mut rng);
                chars[u] = services[u].tree.iter().map(|_| rng.random_range(300..20_000)).collect();
            } else if si > 0 && !services[u].stable_chars {
                chars[u] = services[u].tree.iter().map(|_| rng.random_range(300..20_000)).collect();
            }
            let svc = &services[u];
            let mut page_links: Vec<Vec<String>> = vec![Vec::new(); svc.tree.len()];
            for &(v, persistent) in &out_by_service[u] {
                if !services[v].present[si] {
                    continue;
                }
                if !persistent && rng.random::<f64>() >= cfg.link_retention {
                    continue;
                }
                let weight = 1 + usize::from(rng.random::<f64>() < 0.3) + usize::from(rng.random::<f64>() < 0.1);
                for _ in 0..weight {
                    let p = rng.random_range(0..page_links.len());
                    page_links[p].push(services[v].id.clone());
                }
            }
            for (((path, depth), out_links), &c) in svc.tree.iter().zip(page_links).zip(&chars[u]) {
                recs.push(PageRecord {
                    snapshot_id: snap.clone(),
                    service_id: svc.id.clone(),
                    page_path: path.clone(),
                    depth: *depth,
                    char_count: c,
                    out_links,
                });
            }
        }
        pages.push((snap.clone(), recs));
    }

    let labels = synth_labels(&ids, cfg.labeled_share, &mut rng);
    let names = |v: &[usize]| -> Vec<String> {
        let mut out: Vec<String> = v.iter().map(|&i| ids[i].clone()).collect();
        out.sort();
        out
    };
    let mut persistent: Vec<String> = ids[..n_persistent].to_vec();
    persistent.sort();
    let membership = services
        .iter()
        .map(|svc| {
            let snaps = cfg
                .snapshots
                .iter()
                .zip(&svc.present)
                .filter(|(_, &p)| p)
                .map(|(s, _)| s.clone())
                .collect();
            (svc.id.clone(), snaps)
        })
        .collect();
    Corpus {
        config: cfg.clone(),
        pages,
        labels,
        truth: PlantedTruth {
            hub: ids[hub].clone(),
            community_a: names(&comm_a),
            community_b: names(&comm_b),
            persistent,
            membership,
        },
    }
}

fn synth_labels<R: Rng + ?Sized>(ids: &[String], share: f64, rng: &mut R) -> LabelSet {
    // hosting dominates, every other class appears
    let weights: Vec<f64> = CLASSES
        .iter()
        .map(|(name, _)| if *name == "Hosting" { 20.0 } else { 1.5 })
        .collect();
    let pick = WeightedIndex::new(&weights).expect("positive weights");
    let languages = [("English", 0.8), ("Russian", 0.1), ("German", 0.05), ("French", 0.05)];
    let lang = WeightedIndex::new(languages.iter().map(|l| l.1)).expect("positive weights");
    let mut sorted: Vec<&String> = ids.iter().collect();
    sorted.sort();
    let mut set = LabelSet::new();
    for id in sorted {
        if rng.random::<f64>() >= share {
            continue;
        }
        let class = ContentClass::parse(CLASSES[pick.sample(rng)].0).expect("table name");
        let language = languages[lang.sample(rng)].0.to_string();
        set.insert(id.clone(), Label { class, language }).expect("ids are unique");
    }
    set
}
