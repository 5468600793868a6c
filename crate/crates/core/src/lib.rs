//! Analysis of multi-snapshot hidden-service link graphs: ingestion of crawled
//! pages, service graphs and their algebra, global and per-vertex metrics,
//! heavy-tail fits, community detection, bow-tie decomposition and
//! content-vs-topology statistics.
//!
//! Numeric code is generic over [`scalar::Real`]; the aliases below fix it to
//! `f64`.

pub mod bowtie;
pub mod community;
pub mod fitting;
pub mod graph;
pub mod ingest;
pub mod metrics;
pub mod scalar;
pub mod stats;
pub mod synth;

pub use graph::{Directedness, ServiceGraph};
pub use ingest::{LcRatio, PageRecord};

pub type GlobalMetrics = metrics::GlobalMetrics<f64>;
pub type VertexMetrics = metrics::VertexMetrics<f64>;
pub type DistanceStats = metrics::DistanceStats<f64>;
pub type PowerLawFit = fitting::PowerLawFit<f64>;
pub type LogNormalFit = fitting::LogNormalFit<f64>;
pub type Comparison = fitting::Comparison<f64>;
pub type FitReport = fitting::FitReport<f64>;
pub type CorrelationMatrix = stats::CorrelationMatrix<f64>;
pub type GainResult = stats::GainResult<f64>;
pub type GainTable = stats::GainTable<f64>;
