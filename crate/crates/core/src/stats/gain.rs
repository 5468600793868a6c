//! Information gain of metric-proportional sampling over uniform sampling.

use std::io::Write;

use serde::Serialize;

use super::labels::{ContentClass, LabelSet, ServiceType};
use super::StatsError;
use crate::metrics::VertexMetrics;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GainResult<F> {
    pub metric: String,
    pub class: String,
    pub p_weighted: F,
    pub p_uniform: F,
    /// Kullback-Leibler divergence in bits.
    pub gain: F,
}

/// Two-term KL divergence D(p_w || p_u) in bits, with 0·log 0 = 0.
pub fn binary_kl_bits<F: Real>(pw: F, pu: F) -> F {
    let term = |p: F, q: F| if p == F::zero() { F::zero() } else { p * (p / q).log2() };
    let d = term(pw, pu) + term(F::one() - pw, F::one() - pu);
    d.max(F::zero())
}

/// (p_weighted, p_uniform, gain) for one metric vector and class mask.
pub fn info_gain<F: Real>(values: &[F], in_class: &[bool]) -> Result<(F, F, F), StatsError> {
    assert_eq!(values.len(), in_class.len(), "info_gain: length mismatch");
    if values.iter().any(|&v| v < F::zero() || v.is_nan()) {
        return Err(StatsError::NegativeMetric);
    }
    let n = values.len();
    let k = in_class.iter().filter(|&&b| b).count();
    if k == 0 || k == n {
        return Err(StatsError::DegenerateClass);
    }
    let total: F = values.iter().copied().sum();
    if total <= F::zero() {
        return Err(StatsError::UninformativeMetric);
    }
    let pu = F::of_usize(k) / F::of_usize(n);
    // a constant metric samples uniformly; keep that exact
    let pw = if values.iter().all(|&v| v == values[0]) {
        pu
    } else {
        let inside: F = values.iter().zip(in_class).filter(|(_, &b)| b).map(|(&v, _)| v).sum();
        (inside / total).min(F::one())
    };
    Ok((pw, pu, binary_kl_bits(pw, pu)))
}

/// Named wrapper over [`info_gain`].
pub fn info_gain_named<F: Real>(metric: &str, class: &str, values: &[F], in_class: &[bool]) -> Result<GainResult<F>, StatsError> {
    let (p_weighted, p_uniform, gain) = info_gain(values, in_class)?;
    Ok(GainResult {
        metric: metric.to_string(),
        class: class.to_string(),
        p_weighted,
        p_uniform,
        gain,
    })
}

/// Gain for every metric and every class (plus the Normal and Suspicious
/// macro types). Cells whose preconditions fail hold NaN.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GainTable<F> {
    pub metrics: Vec<String>,
    pub classes: Vec<String>,
    /// `cells[i][j]` for metric i and class j.
    pub cells: Vec<Vec<GainResult<F>>>,
}

impl<F: Real> GainTable<F> {
    pub fn get(&self, metric: &str, class: &str) -> Option<&GainResult<F>> {
        let i = self.metrics.iter().position(|m| m == metric)?;
        let j = self.classes.iter().position(|c| c == class)?;
        Some(&self.cells[i][j])
    }

    /// Long-form CSV `metric,class,p_weighted,p_uniform,gain`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), StatsError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["metric", "class", "p_weighted", "p_uniform", "gain"])?;
        for row in &self.cells {
            for c in row {
                w.write_record([
                    c.metric.clone(),
                    c.class.clone(),
                    c.p_weighted.to_string(),
                    c.p_uniform.to_string(),
                    c.gain.to_string(),
                ])?;
            }
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

enum Target {
    Class(ContentClass),
    Type(ServiceType),
}

pub fn gain_report<F: Real>(vm: &VertexMetrics<F>, labels: &LabelSet) -> GainTable<F> {
    let labeled: Vec<(usize, ContentClass)> = vm
        .vertices
        .iter()
        .enumerate()
        .filter_map(|(i, v)| labels.analyzable(v).map(|l| (i, l.class)))
        .collect();
    let mut targets: Vec<(String, Target)> = ContentClass::analyzable()
        .map(|c| (c.name().to_string(), Target::Class(c)))
        .collect();
    for t in [ServiceType::Normal, ServiceType::Suspicious] {
        targets.push((t.name().to_string(), Target::Type(t)));
    }
    let columns = vm.columns();
    let cells = columns
        .iter()
        .map(|(name, col)| {
            // pairwise: drop vertices where this metric is undefined
            let rows: Vec<(F, ContentClass)> = labeled
                .iter()
                .filter(|(i, _)| !col[*i].is_nan())
                .map(|&(i, c)| (col[i], c))
                .collect();
            let values: Vec<F> = rows.iter().map(|r| r.0).collect();
            targets
                .iter()
                .map(|(cname, t)| {
                    let mask: Vec<bool> = rows
                        .iter()
                        .map(|(_, c)| match t {
                            Target::Class(k) => c == k,
                            Target::Type(k) => c.service_type() == *k,
                        })
                        .collect();
                    info_gain_named(name, cname, &values, &mask).unwrap_or_else(|_| GainResult {
                        metric: name.to_string(),
                        class: cname.clone(),
                        p_weighted: F::nan(),
                        p_uniform: F::nan(),
                        gain: F::nan(),
                    })
                })
                .collect()
        })
        .collect();
    GainTable {
        metrics: columns.iter().map(|(n, _)| n.to_string()).collect(),
        classes: targets.into_iter().map(|(n, _)| n).collect(),
        cells,
    }
}
