//! Discrete power-law fit with KS-selected lower cutoff.

use rayon::prelude::*;

use super::special::hurwitz_zeta;
use super::{FitError, FitOptions};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerLawFit<F> {
    pub alpha: F,
    pub xmin: u64,
    pub ks_distance: F,
    pub n_tail: usize,
    pub tail_fraction: F,
}

/// Sorted sample with distinct values, counts and suffix sums.
pub(crate) struct SortedSample<F> {
    pub values: Vec<u64>,
    pub counts: Vec<usize>,
    /// Number of observations at positions i.. (len + 1 entries).
    pub tail_n: Vec<usize>,
    /// Σ ln x over observations at positions i.. (len + 1 entries).
    pub tail_log: Vec<F>,
    pub n: usize,
}

impl<F: Real> SortedSample<F> {
    pub fn new(sample: &[u64]) -> Result<Self, FitError> {
        if sample.is_empty() {
            return Err(FitError::EmptySample);
        }
        if sample.contains(&0) {
            return Err(FitError::NonPositive);
        }
        let mut sorted = sample.to_vec();
        sorted.sort_unstable();
        let mut values = Vec::new();
        let mut counts: Vec<usize> = Vec::new();
        for x in sorted {
            if values.last() == Some(&x) {
                *counts.last_mut().expect("paired with values") += 1;
            } else {
                values.push(x);
                counts.push(1);
            }
        }
        let d = values.len();
        let mut tail_n = vec![0; d + 1];
        let mut tail_log = vec![F::zero(); d + 1];
        for i in (0..d).rev() {
            tail_n[i] = tail_n[i + 1] + counts[i];
            tail_log[i] = tail_log[i + 1] + F::of_usize(counts[i]) * F::of_u64(values[i]).ln();
        }
        Ok(SortedSample {
            values,
            counts,
            tail_n,
            tail_log,
            n: sample.len(),
        })
    }

    /// Index of the first distinct value >= xmin.
    pub fn start_of(&self, xmin: u64) -> usize {
        self.values.partition_point(|&v| v < xmin)
    }
}

/// Discrete power-law log-likelihood of the tail starting at index `i`.
fn loglik<F: Real>(s: &SortedSample<F>, i: usize, alpha: F) -> F {
    let n = F::of_usize(s.tail_n[i]);
    -alpha * s.tail_log[i] - n * hurwitz_zeta(alpha, F::of_u64(s.values[i])).ln()
}

/// Golden-section maximisation of a concave function on [lo, hi].
pub(crate) fn golden_max<F: Real>(mut lo: F, mut hi: F, tol: F, f: impl Fn(F) -> F) -> F {
    let inv_phi = F::of((5f64.sqrt() - 1.0) / 2.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    (lo + hi) / F::two()
}

/// Maximum-likelihood α for the tail at distinct index `i`.
fn mle_alpha<F: Real>(s: &SortedSample<F>, i: usize, opts: &FitOptions) -> F {
    golden_max(
        F::of(opts.alpha_min),
        F::of(opts.alpha_max),
        F::of(opts.alpha_tol),
        |a| loglik(s, i, a),
    )
}

/// Exact supremum over integers x >= xmin of |F_emp(x) - F_model(x)|.
///
/// Both CDFs are step functions; between consecutive observed values the
/// empirical CDF is flat and the model CDF rises, so only the two ends of
/// each flat stretch need checking.
pub(crate) fn ks_at<F: Real>(s: &SortedSample<F>, i: usize, alpha: F) -> F {
    let xmin = F::of_u64(s.values[i]);
    let z0 = hurwitz_zeta(alpha, xmin);
    let n = F::of_usize(s.tail_n[i]);
    let mut seen = 0usize;
    let mut ks = F::zero();
    // model CDF at x is 1 - ζ(α, x+1)/ζ(α, xmin)
    let model = |x1: u64| F::one() - hurwitz_zeta(alpha, F::of_u64(x1)) / z0;
    for j in i..s.values.len() {
        seen += s.counts[j];
        let emp = F::of_usize(seen) / n;
        ks = ks.max((emp - model(s.values[j] + 1)).abs());
        if j + 1 < s.values.len() {
            ks = ks.max((emp - model(s.values[j + 1])).abs());
        }
    }
    ks
}

/// Fits a discrete power law, choosing xmin from the distinct sample values
/// by minimum KS distance (ties to the smallest xmin). A candidate needs at
/// least `opts.min_tail` observations and two distinct values in its tail.
pub fn fit_power_law<F: Real>(sample: &[u64], opts: &FitOptions) -> Result<PowerLawFit<F>, FitError> {
    let s = SortedSample::<F>::new(sample)?;
    let candidates: Vec<usize> = (0..s.values.len())
        .filter(|&i| s.tail_n[i] >= opts.min_tail.max(1) && i + 1 < s.values.len())
        .collect();
    if candidates.is_empty() {
        return Err(FitError::InsufficientTail {
            needed: opts.min_tail,
            largest: s.tail_n[0],
            distinct: s.values.len(),
        });
    }
    let scored: Vec<(usize, F, F)> = candidates
        .par_iter()
        .map(|&i| {
            let a = mle_alpha(&s, i, opts);
            (i, a, ks_at(&s, i, a))
        })
        .collect();
    let &(i, alpha, ks) = scored
        .iter()
        .min_by(|a, b| a.2.partial_cmp(&b.2).expect("finite KS").then(a.0.cmp(&b.0)))
        .expect("non-empty candidates");
    Ok(PowerLawFit {
        alpha,
        xmin: s.values[i],
        ks_distance: ks,
        n_tail: s.tail_n[i],
        tail_fraction: F::of_usize(s.tail_n[i]) / F::of_usize(s.n),
    })
}

/// Fits α with a fixed xmin.
pub fn fit_power_law_at<F: Real>(sample: &[u64], xmin: u64, opts: &FitOptions) -> Result<PowerLawFit<F>, FitError> {
    let s = SortedSample::<F>::new(sample)?;
    let i = s.start_of(xmin);
    if i + 1 >= s.values.len() {
        return Err(FitError::DegenerateTail { xmin });
    }
    let mut s = s;
    // re-anchor so the first tail value is xmin itself
    if s.values[i] != xmin {
        s.values.insert(i, xmin);
        s.counts.insert(i, 0);
        s.tail_n.insert(i, s.tail_n[i]);
        let l = s.tail_log[i];
        s.tail_log.insert(i, l);
    }
    let alpha = mle_alpha(&s, i, opts);
    Ok(PowerLawFit {
        alpha,
        xmin,
        ks_distance: ks_at(&s, i, alpha),
        n_tail: s.tail_n[i],
        tail_fraction: F::of_usize(s.tail_n[i]) / F::of_usize(s.n),
    })
}

/// Pointwise log-probabilities of the tail observations under the fit.
pub fn power_law_logpmf<F: Real>(fit: &PowerLawFit<F>, x: u64) -> F {
    -fit.alpha * F::of_u64(x).ln() - hurwitz_zeta(fit.alpha, F::of_u64(fit.xmin)).ln()
}
