//! Page-record ingestion and per-service / per-snapshot aggregation.
//!
//! Input is JSON lines, one crawled page per line:
//!
//! ```text
//! {"snapshot":"S1","service":"abc.onion","path":"/","depth":0,"chars":100,"links":["x.onion"]}
//! ```
//!
//! Unknown fields are ignored. `links` keeps one entry per hyperlink
//! occurrence, so duplicates carry edge-weight information downstream.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, BufRead, Write};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

/// Links-to-chars ratio, kept exact so the density band test is exact.
pub type LcRatio = Ratio<u64>;

/// Lower bound of the link-directory band: one link every 200 chars.
pub const BAND_LOW: (u64, u64) = (1, 200);
/// Upper bound of the link-directory band: one link every 20 chars.
pub const BAND_HIGH: (u64, u64) = (1, 20);

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("line {line}: malformed record: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: missing required field `{field}`")]
    MissingField { line: usize, field: &'static str },
    #[error("line {line}: invalid field `{field}`: {reason}")]
    InvalidField {
        line: usize,
        field: &'static str,
        reason: String,
    },
    #[error("line {line}: {source}")]
    Io { line: usize, source: io::Error },
    #[error("insufficient snapshots: need at least 2, found {found}")]
    InsufficientSnapshots { found: usize },
}

/// One crawled page.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageRecord {
    pub snapshot_id: String,
    pub service_id: String,
    pub page_path: String,
    /// Tree depth of the page, root = 0.
    pub depth: u32,
    pub char_count: u64,
    pub out_links: Vec<String>,
}

impl PageRecord {
    /// Serializes the record in the JSON-lines input format.
    pub fn to_json_line(&self) -> String {
        serde_json::json!({
            "snapshot": self.snapshot_id,
            "service": self.service_id,
            "path": self.page_path,
            "depth": self.depth,
            "chars": self.char_count,
            "links": self.out_links,
        })
        .to_string()
    }
}

/// Parses a stream of JSON lines. Blank lines are skipped; line numbers
/// in errors are 1-based.
pub fn parse_pages<R: BufRead>(reader: R) -> Result<Vec<PageRecord>, IngestError> {
    let mut pages = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|source| IngestError::Io {
            line: line_no,
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        pages.push(parse_page_line(&line, line_no)?);
    }
    Ok(pages)
}

pub fn parse_page_line(line: &str, line_no: usize) -> Result<PageRecord, IngestError> {
    let value: Value = serde_json::from_str(line).map_err(|e| IngestError::Malformed {
        line: line_no,
        message: e.to_string(),
    })?;
    let obj = value.as_object().ok_or_else(|| IngestError::Malformed {
        line: line_no,
        message: "expected a JSON object".into(),
    })?;

    let field = |name: &'static str| {
        obj.get(name).ok_or(IngestError::MissingField {
            line: line_no,
            field: name,
        })
    };
    let invalid = |name: &'static str, reason: &str| IngestError::InvalidField {
        line: line_no,
        field: name,
        reason: reason.to_string(),
    };
    let string = |name: &'static str| -> Result<String, IngestError> {
        field(name)?
            .as_str()
            .map(str::to_owned)
            .ok_or_else(|| invalid(name, "expected a string"))
    };
    let count = |name: &'static str| -> Result<u64, IngestError> {
        let v = field(name)?;
        match v.as_u64() {
            Some(n) => Ok(n),
            None if v.as_i64().is_some() => Err(invalid(name, "must be non-negative")),
            None => Err(invalid(name, "expected a non-negative integer")),
        }
    };

    let snapshot_id = string("snapshot")?;
    let service_id = string("service")?;
    if service_id.is_empty() {
        return Err(invalid("service", "must be non-empty"));
    }
    let page_path = string("path")?;
    let depth = u32::try_from(count("depth")?).map_err(|_| invalid("depth", "out of range"))?;
    let char_count = count("chars")?;
    let out_links = field("links")?
        .as_array()
        .ok_or_else(|| invalid("links", "expected an array of strings"))?
        .iter()
        .map(|l| l.as_str().map(str::to_owned))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| invalid("links", "expected an array of strings"))?;

    Ok(PageRecord {
        snapshot_id,
        service_id,
        page_path,
        depth,
        char_count,
        out_links,
    })
}

/// Aggregate of all pages of one service in one snapshot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ServiceSummary {
    pub service_id: String,
    pub snapshot_id: String,
    /// Maximum page depth.
    pub tree_height: u32,
    pub char_count: u64,
    /// Hyperlink occurrences over all pages, duplicates included.
    pub link_count: u64,
    /// `link_count / char_count`, zero when the service has no text.
    pub lcratio: LcRatio,
}

impl ServiceSummary {
    pub fn in_link_band(&self) -> bool {
        let lo = LcRatio::new(BAND_LOW.0, BAND_LOW.1);
        let hi = LcRatio::new(BAND_HIGH.0, BAND_HIGH.1);
        self.lcratio >= lo && self.lcratio <= hi
    }
}

pub fn lcratio(link_count: u64, char_count: u64) -> LcRatio {
    if char_count == 0 {
        LcRatio::from_integer(0)
    } else {
        LcRatio::new(link_count, char_count)
    }
}

/// Key of a summary: `(snapshot_id, service_id)`.
pub type SummaryKey = (String, String);

pub fn summarize_services(pages: &[PageRecord]) -> BTreeMap<SummaryKey, ServiceSummary> {
    let mut acc: BTreeMap<SummaryKey, (u32, u64, u64)> = BTreeMap::new();
    for p in pages {
        let entry = acc
            .entry((p.snapshot_id.clone(), p.service_id.clone()))
            .or_insert((0, 0, 0));
        entry.0 = entry.0.max(p.depth);
        entry.1 += p.char_count;
        entry.2 += p.out_links.len() as u64;
    }
    acc.into_iter()
        .map(|((snap, svc), (height, chars, links))| {
            let summary = ServiceSummary {
                service_id: svc.clone(),
                snapshot_id: snap.clone(),
                tree_height: height,
                char_count: chars,
                link_count: links,
                lcratio: lcratio(links, chars),
            };
            ((snap, svc), summary)
        })
        .collect()
}

/// Writes the summary table as CSV: `service,snapshot,tree_height,chars,links,lcratio`.
pub fn write_summaries_csv<'a, W: Write>(
    summaries: impl IntoIterator<Item = &'a ServiceSummary>,
    out: W,
) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["service", "snapshot", "tree_height", "chars", "links", "lcratio"])?;
    for s in summaries {
        let ratio = *s.lcratio.numer() as f64 / *s.lcratio.denom() as f64;
        w.write_record([
            s.service_id.as_str(),
            s.snapshot_id.as_str(),
            &s.tree_height.to_string(),
            &s.char_count.to_string(),
            &s.link_count.to_string(),
            &ratio.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Number of services sharing one exact snapshot-membership pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipCount {
    pub snapshots: Vec<String>,
    pub services: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PersistenceReport {
    pub snapshots: Vec<String>,
    pub total_services: usize,
    /// One entry per non-empty membership pattern that occurs, sorted by pattern.
    pub membership_counts: Vec<MembershipCount>,
    /// Services crawled in every snapshot.
    pub all_snapshot_count: usize,
    pub tree_persistent_count: usize,
    pub char_persistent_count: usize,
    /// Fraction of the snapshot's services with lcratio in `[1/200, 1/20]`.
    pub band_fraction_per_snapshot: BTreeMap<String, f64>,
}

impl PersistenceReport {
    pub fn count_for(&self, pattern: &[&str]) -> usize {
        self.membership_counts
            .iter()
            .find(|m| m.snapshots.iter().map(String::as_str).eq(pattern.iter().copied()))
            .map_or(0, |m| m.services)
    }
}

/// Persistence statistics over all snapshots present in `pages`.
///
/// Tree structure is compared as the multiset of `(page_path, depth)` pairs;
/// char persistence compares the summed `char_count`.
pub fn persistence_report(pages: &[PageRecord]) -> Result<PersistenceReport, IngestError> {
    let snapshots: BTreeSet<&str> = pages.iter().map(|p| p.snapshot_id.as_str()).collect();
    if snapshots.len() < 2 {
        return Err(IngestError::InsufficientSnapshots {
            found: snapshots.len(),
        });
    }
    let snapshots: Vec<&str> = snapshots.into_iter().collect();
    let snap_index: BTreeMap<&str, usize> =
        snapshots.iter().enumerate().map(|(i, s)| (*s, i)).collect();

    // service -> per-snapshot sorted (path, depth) multiset
    let mut trees: BTreeMap<&str, Vec<Option<Vec<(&str, u32)>>>> = BTreeMap::new();
    for p in pages {
        let slots = trees
            .entry(p.service_id.as_str())
            .or_insert_with(|| vec![None; snapshots.len()]);
        slots[snap_index[p.snapshot_id.as_str()]]
            .get_or_insert_with(Vec::new)
            .push((p.page_path.as_str(), p.depth));
    }
    for slots in trees.values_mut() {
        for tree in slots.iter_mut().flatten() {
            tree.sort_unstable();
        }
    }

    let summaries = summarize_services(pages);
    let chars_of = |snap: &str, svc: &str| {
        summaries
            .get(&(snap.to_string(), svc.to_string()))
            .map(|s| s.char_count)
    };

    let mut patterns: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut all_count = 0;
    let mut tree_persistent = 0;
    let mut char_persistent = 0;
    for (svc, slots) in &trees {
        let pattern: Vec<usize> = (0..snapshots.len()).filter(|&i| slots[i].is_some()).collect();
        *patterns.entry(pattern.clone()).or_default() += 1;
        if pattern.len() != snapshots.len() {
            continue;
        }
        all_count += 1;
        let first = slots[0].as_ref();
        if slots.iter().all(|t| t.as_ref() == first) {
            tree_persistent += 1;
        }
        let c0 = chars_of(snapshots[0], svc);
        if snapshots.iter().all(|s| chars_of(s, svc) == c0) {
            char_persistent += 1;
        }
    }

    let mut band_fraction = BTreeMap::new();
    for snap in &snapshots {
        let (mut total, mut band) = (0usize, 0usize);
        for s in summaries.values().filter(|s| s.snapshot_id == *snap) {
            total += 1;
            band += usize::from(s.in_link_band());
        }
        let frac = if total == 0 { 0.0 } else { band as f64 / total as f64 };
        band_fraction.insert(snap.to_string(), frac);
    }

    Ok(PersistenceReport {
        snapshots: snapshots.iter().map(|s| s.to_string()).collect(),
        total_services: trees.len(),
        membership_counts: patterns
            .into_iter()
            .map(|(pat, services)| MembershipCount {
                snapshots: pat.iter().map(|&i| snapshots[i].to_string()).collect(),
                services,
            })
            .collect(),
        all_snapshot_count: all_count,
        tree_persistent_count: tree_persistent,
        char_persistent_count: char_persistent,
        band_fraction_per_snapshot: band_fraction,
    })
}
