//! Rank correlations between vertex metrics, label prevalence and
//! information gain of metrics with respect to content classes.

mod correlation;
mod gain;
mod labels;

use std::io::Write;

use serde::Serialize;
use thiserror::Error;

pub use correlation::{average_ranks, pearson, spearman};
pub use gain::{binary_kl_bits, gain_report, info_gain, info_gain_named, GainResult, GainTable};
pub use labels::{tag_prevalence, ContentClass, Label, LabelAttribute, LabelSet, Prevalence, ServiceType, CLASSES};

use crate::metrics::VertexMetrics;
use crate::scalar::Real;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("uninformative metric: values sum to zero")]
    UninformativeMetric,
    #[error("degenerate class: empty or covering every labeled vertex")]
    DegenerateClass,
    #[error("metric has negative or undefined values")]
    NegativeMetric,
    #[error("no labeled vertices")]
    NoLabeledVertices,
    #[error("label file line {line}: unknown class `{name}`")]
    UnknownClass { line: usize, name: String },
    #[error("label file line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("service `{0}` labeled twice")]
    DuplicateService(String),
    #[error("csv: {0}")]
    Csv(String),
}

impl From<csv::Error> for StatsError {
    fn from(e: csv::Error) -> Self {
        StatsError::Csv(e.to_string())
    }
}

/// Minimum number of jointly defined points for a correlation entry.
pub const MIN_CORRELATION_POINTS: usize = 3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationMatrix<F> {
    pub names: Vec<String>,
    pub values: Vec<Vec<F>>,
}

impl<F: Real> CorrelationMatrix<F> {
    pub fn get(&self, a: &str, b: &str) -> Option<F> {
        let i = self.names.iter().position(|n| n == a)?;
        let j = self.names.iter().position(|n| n == b)?;
        Some(self.values[i][j])
    }

    /// Square CSV with a leading `metric` column.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), StatsError> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["metric".to_string()];
        header.extend(self.names.iter().cloned());
        w.write_record(&header)?;
        for (name, row) in self.names.iter().zip(&self.values) {
            let mut rec = vec![name.clone()];
            rec.extend(row.iter().map(|v| v.to_string()));
            w.write_record(&rec)?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

/// Spearman correlation between every pair of vertex-metric columns, with
/// pairwise deletion of NaN entries. Unit diagonal; NaN where fewer than
/// three points are jointly defined.
pub fn spearman_matrix<F: Real>(vm: &VertexMetrics<F>) -> CorrelationMatrix<F> {
    let cols = vm.columns();
    let k = cols.len();
    let mut values = vec![vec![F::one(); k]; k];
    for i in 0..k {
        for j in (i + 1)..k {
            let r = spearman(cols[i].1, cols[j].1, MIN_CORRELATION_POINTS);
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    CorrelationMatrix {
        names: cols.iter().map(|(n, _)| n.to_string()).collect(),
        values,
    }
}
