use std::collections::BTreeMap;

use super::{CommunityError, Partition};
use crate::scalar::Real;

/// Cluster-overlap counts between two partitions of the same vertices.
#[derive(Debug, Clone)]
pub struct ContingencyTable {
    pub n: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// Non-zero cells as (row, col, count).
    pub cells: Vec<(usize, usize, usize)>,
}

impl ContingencyTable {
    pub fn new(a: &Partition, b: &Partition) -> Result<Self, CommunityError> {
        if a.vertices() != b.vertices() {
            return Err(CommunityError::DomainMismatch);
        }
        let mut rows = vec![0; a.cluster_count()];
        let mut cols = vec![0; b.cluster_count()];
        let mut cells: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (&i, &j) in a.labels().iter().zip(b.labels()) {
            rows[i] += 1;
            cols[j] += 1;
            *cells.entry((i, j)).or_insert(0) += 1;
        }
        Ok(ContingencyTable {
            n: a.len(),
            rows,
            cols,
            cells: cells.into_iter().map(|((i, j), c)| (i, j, c)).collect(),
        })
    }
}

fn entropy<F: Real>(sizes: &[usize], n: usize) -> F {
    let nf = F::of_usize(n);
    -sizes
        .iter()
        .filter(|&&s| s > 0)
        .map(|&s| {
            let p = F::of_usize(s) / nf;
            p * p.ln()
        })
        .sum::<F>()
}

fn mi_of<F: Real>(t: &ContingencyTable) -> F {
    let nf = F::of_usize(t.n);
    t.cells
        .iter()
        .map(|&(i, j, c)| {
            let c = F::of_usize(c);
            c / nf * (nf * c / (F::of_usize(t.rows[i]) * F::of_usize(t.cols[j]))).ln()
        })
        .sum()
}

/// Mutual information in nats.
pub fn mutual_information<F: Real>(a: &Partition, b: &Partition) -> Result<F, CommunityError> {
    Ok(mi_of(&ContingencyTable::new(a, b)?))
}

/// Expected mutual information under the hypergeometric permutation model.
fn expected_mi<F: Real>(t: &ContingencyTable) -> F {
    let n = t.n;
    let mut lf = Vec::with_capacity(n + 1);
    lf.push(F::zero());
    for k in 1..=n {
        lf.push(lf[k - 1] + F::of_usize(k).ln());
    }
    let nf = F::of_usize(n);
    let mut total = F::zero();
    for &a in &t.rows {
        for &b in &t.cols {
            let lo = (a + b).saturating_sub(n).max(1);
            let hi = a.min(b);
            let fixed = lf[a] + lf[b] + lf[n - a] + lf[n - b] - lf[n];
            for nij in lo..=hi {
                let x = F::of_usize(nij);
                let term = x / nf * (nf * x / (F::of_usize(a) * F::of_usize(b))).ln();
                let logp = fixed - lf[nij] - lf[a - nij] - lf[b - nij] - lf[n + nij - a - b];
                total += term * logp.exp();
            }
        }
    }
    total
}

/// Adjusted mutual information with arithmetic-mean normalization.
///
/// Two single-cluster partitions (or two empty ones) give 1.
pub fn adjusted_mutual_information<F: Real>(a: &Partition, b: &Partition) -> Result<F, CommunityError> {
    let t = ContingencyTable::new(a, b)?;
    let (ka, kb) = (t.rows.len(), t.cols.len());
    if (ka == 1 && kb == 1) || (ka == 0 && kb == 0) {
        return Ok(F::one());
    }
    let mi = mi_of::<F>(&t);
    let emi = expected_mi::<F>(&t);
    let mean_h = (entropy::<F>(&t.rows, t.n) + entropy::<F>(&t.cols, t.n)) / F::two();
    let mut den = mean_h - emi;
    let tiny = F::epsilon();
    if den.abs() < tiny {
        den = if den < F::zero() { -tiny } else { tiny };
    }
    Ok((mi - emi) / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(labels: &[u32]) -> Partition {
        Partition::from_pairs(labels.iter().enumerate().map(|(i, &l)| (format!("v{i:03}"), l))).unwrap()
    }

    #[test]
    fn identical_is_one() {
        let p = part(&[0, 0, 1, 1, 2, 2, 2]);
        let a: f64 = adjusted_mutual_information(&p, &p).unwrap();
        assert!((a - 1.0).abs() < 1e-12);
        let relabeled = part(&[5, 5, 3, 3, 9, 9, 9]);
        let b: f64 = adjusted_mutual_information(&p, &relabeled).unwrap();
        assert!((b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sklearn_reference_value() {
        // adjusted_mutual_info_score([0,0,0,1,1,1], [0,0,1,1,2,2]) = 0.2987924581708901
        let a: f64 = adjusted_mutual_information(&part(&[0, 0, 0, 1, 1, 1]), &part(&[0, 0, 1, 1, 2, 2])).unwrap();
        assert!((a - 0.2987924581708901).abs() < 1e-12, "{a}");
    }

    #[test]
    fn mutual_information_reference() {
        // two balanced halves fully aligned: MI = ln 2
        let p = part(&[0, 0, 1, 1]);
        let mi: f64 = mutual_information(&p, &p).unwrap();
        assert!((mi - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn single_clusters() {
        let one = part(&[0, 0, 0]);
        assert_eq!(adjusted_mutual_information::<f64>(&one, &one).unwrap(), 1.0);
        let split = part(&[0, 1, 2]);
        let a: f64 = adjusted_mutual_information(&one, &split).unwrap();
        assert!(a.abs() < 1e-12);
    }

    #[test]
    fn domain_mismatch() {
        let p = part(&[0, 1]);
        let q = part(&[0, 1, 1]);
        assert!(matches!(adjusted_mutual_information::<f64>(&p, &q), Err(CommunityError::DomainMismatch)));
    }
}
