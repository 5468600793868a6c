//! Heavy-tail fits for degree samples: discrete power law, discrete
//! log-normal and their likelihood-ratio comparison.

mod lognormal;
mod powerlaw;
pub mod special;

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use lognormal::{fit_lognormal, lognormal_logpmf, LogNormalFit};
pub use powerlaw::{fit_power_law, fit_power_law_at, power_law_logpmf, PowerLawFit};

use crate::scalar::Real;
use special::{erfc, hurwitz_zeta};

#[derive(Debug, Error, PartialEq)]
pub enum FitError {
    #[error("empty sample")]
    EmptySample,
    #[error("sample contains a non-positive value")]
    NonPositive,
    #[error("insufficient tail: need {needed} observations over at least two distinct values (sample has {largest} observations, {distinct} distinct)")]
    InsufficientTail { needed: usize, largest: usize, distinct: usize },
    #[error("no observations at or above xmin {xmin}")]
    EmptyTail { xmin: u64 },
    #[error("degenerate tail at xmin {xmin}: fewer than two distinct values")]
    DegenerateTail { xmin: u64 },
    #[error("fits were made on different tails (xmin {0} vs {1})")]
    MismatchedTails(u64, u64),
}

#[derive(Debug, Clone, Copy)]
pub struct FitOptions {
    /// Minimum number of tail observations for an xmin candidate.
    pub min_tail: usize,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_tol: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            min_tail: 50,
            alpha_min: 1.0 + 1e-6,
            alpha_max: 50.0,
            alpha_tol: 1e-10,
        }
    }
}

/// Normalised log-likelihood ratio test between two models.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Comparison<F> {
    /// Σ (ℓ₁ − ℓ₂); positive favours the first model.
    pub loglik_ratio: F,
    /// R / (σ √n).
    pub normalized_ratio: F,
    pub p_value: F,
}

/// Vuong-style test from pointwise log-likelihoods.
pub fn vuong<F: Real>(l1: &[F], l2: &[F]) -> Comparison<F> {
    assert_eq!(l1.len(), l2.len(), "vuong: length mismatch");
    let n = l1.len();
    let d: Vec<F> = l1.iter().zip(l2).map(|(&a, &b)| a - b).collect();
    let r: F = d.iter().copied().sum();
    let nf = F::of_usize(n.max(1));
    let mean = r / nf;
    let var = d.iter().map(|&x| (x - mean) * (x - mean)).sum::<F>() / nf;
    if var <= F::zero() {
        let p = if r == F::zero() { F::one() } else { F::zero() };
        let norm = if r == F::zero() { F::zero() } else { r.signum() * F::infinity() };
        return Comparison {
            loglik_ratio: r,
            normalized_ratio: norm,
            p_value: p,
        };
    }
    let sd = var.sqrt();
    Comparison {
        loglik_ratio: r,
        normalized_ratio: r / (sd * nf.sqrt()),
        p_value: erfc(r.abs() / (F::two() * nf * var).sqrt()),
    }
}

/// Compares the power-law and log-normal fits on their shared tail.
/// Positive R favours the power law.
pub fn compare_fits<F: Real>(sample: &[u64], pl: &PowerLawFit<F>, ln: &LogNormalFit<F>) -> Result<Comparison<F>, FitError> {
    if pl.xmin != ln.xmin {
        return Err(FitError::MismatchedTails(pl.xmin, ln.xmin));
    }
    let tail: Vec<u64> = sample.iter().copied().filter(|&x| x >= pl.xmin).collect();
    let l1: Vec<F> = tail.iter().map(|&x| power_law_logpmf(pl, x)).collect();
    let l2: Vec<F> = tail
        .iter()
        .map(|&x| lognormal_logpmf(ln.mu, ln.sigma, ln.xmin, x))
        .collect();
    Ok(vuong(&l1, &l2))
}

/// Exact inverse-CDF sampler for the discrete power law on
/// {xmin, xmin+1, ...}. Values below `xmin + TABLE` come from a precomputed
/// tail table; larger ones from a bisection on the Hurwitz zeta.
#[derive(Debug, Clone)]
pub struct PowerLawSampler<F> {
    alpha: F,
    xmin: u64,
    z0: F,
    /// `ccdf[i]` = P(X >= xmin + i).
    ccdf: Vec<F>,
}

impl<F: Real> PowerLawSampler<F> {
    const TABLE: u64 = 1024;
    const CAP: u64 = 1 << 53;

    pub fn new(alpha: F, xmin: u64) -> Self {
        assert!(alpha > F::one() && xmin >= 1, "power law needs alpha > 1, xmin >= 1");
        let z0 = hurwitz_zeta(alpha, F::of_u64(xmin));
        let ccdf = (0..=Self::TABLE)
            .map(|i| hurwitz_zeta(alpha, F::of_u64(xmin + i)) / z0)
            .collect();
        PowerLawSampler { alpha, xmin, z0, ccdf }
    }

    fn tail(&self, x: u64) -> F {
        hurwitz_zeta(self.alpha, F::of_u64(x)) / self.z0
    }

    /// Largest x with P(X >= x) >= u.
    fn invert(&self, u: F) -> u64 {
        if u > *self.ccdf.last().expect("table") {
            // ccdf is decreasing: first index whose value drops below u
            let i = self.ccdf.partition_point(|&c| c >= u);
            return self.xmin + i as u64 - 1;
        }
        let (mut lo, mut hi) = (self.xmin + Self::TABLE, (self.xmin + Self::TABLE) * 2);
        while self.tail(hi) >= u {
            if hi >= Self::CAP {
                return Self::CAP;
            }
            lo = hi;
            hi = hi.saturating_mul(2);
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.tail(mid) >= u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        // u in (0, 1]
        self.invert(F::one() - F::of(rng.random::<f64>()))
    }
}

/// One draw; build a [`PowerLawSampler`] for repeated sampling.
pub fn sample_power_law<F: Real, R: Rng + ?Sized>(alpha: F, xmin: u64, rng: &mut R) -> u64 {
    PowerLawSampler::new(alpha, xmin).sample(rng)
}

/// Semi-parametric bootstrap goodness-of-fit p-value: the fraction of
/// synthetic samples whose refitted KS distance is at least the observed one.
pub fn bootstrap_gof<F: Real>(sample: &[u64], fit: &PowerLawFit<F>, opts: &FitOptions, reps: usize, seed: u64) -> F {
    let body: Vec<u64> = sample.iter().copied().filter(|&x| x < fit.xmin).collect();
    let p_tail = fit.tail_fraction.to_f64_lossy();
    let sampler = PowerLawSampler::new(fit.alpha, fit.xmin);
    let hits: usize = (0..reps)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
            let synth: Vec<u64> = (0..sample.len())
                .map(|_| {
                    if body.is_empty() || rng.random::<f64>() < p_tail {
                        sampler.sample(&mut rng)
                    } else {
                        body[rng.random_range(0..body.len())]
                    }
                })
                .collect();
            match fit_power_law::<F>(&synth, opts) {
                Ok(f) if f.ks_distance >= fit.ks_distance => 1,
                Ok(_) => 0,
                Err(_) => 0,
            }
        })
        .sum();
    F::of_usize(hits) / F::of_usize(reps.max(1))
}

/// Combined report for one degree sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport<F> {
    pub n: usize,
    pub alpha: F,
    pub xmin: u64,
    pub ks_distance: F,
    pub tail_fraction: F,
    pub n_tail: usize,
    pub lognormal_mu: F,
    pub lognormal_sigma: F,
    pub lognormal_low_confidence: bool,
    pub loglik_ratio: F,
    pub normalized_ratio: F,
    pub p_value: F,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gof_p_value: Option<F>,
}

/// Power law with KS-chosen xmin, log-normal on the same tail, and their
/// comparison. `bootstrap` = (replicates, seed) adds a goodness-of-fit p-value.
pub fn fit_report<F: Real>(sample: &[u64], opts: &FitOptions, bootstrap: Option<(usize, u64)>) -> Result<FitReport<F>, FitError> {
    let pl = fit_power_law::<F>(sample, opts)?;
    let ln = fit_lognormal::<F>(sample, pl.xmin)?;
    let cmp = compare_fits(sample, &pl, &ln)?;
    let gof_p_value = bootstrap.map(|(reps, seed)| bootstrap_gof(sample, &pl, opts, reps, seed));
    Ok(FitReport {
        n: sample.len(),
        alpha: pl.alpha,
        xmin: pl.xmin,
        ks_distance: pl.ks_distance,
        tail_fraction: pl.tail_fraction,
        n_tail: pl.n_tail,
        lognormal_mu: ln.mu,
        lognormal_sigma: ln.sigma,
        lognormal_low_confidence: ln.low_confidence,
        loglik_ratio: cmp.loglik_ratio,
        normalized_ratio: cmp.normalized_ratio,
        p_value: cmp.p_value,
        gof_p_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_likelihoods() {
        let l = [-1.0f64, -2.0, -0.5];
        let c = vuong(&l, &l);
        assert_eq!(c.loglik_ratio, 0.0);
        assert_eq!(c.p_value, 1.0);
    }

    #[test]
    fn vuong_antisymmetric() {
        let a = [-1.0f64, -2.0, -0.5, -3.0];
        let b = [-1.5f64, -1.0, -0.7, -2.0];
        let ab = vuong(&a, &b);
        let ba = vuong(&b, &a);
        assert_eq!(ab.loglik_ratio, -ba.loglik_ratio);
        assert_eq!(ab.p_value, ba.p_value);
    }

    #[test]
    fn sampler_respects_xmin_and_mass() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let sampler = PowerLawSampler::new(2.5f64, 3);
        let draws: Vec<u64> = (0..20_000).map(|_| sampler.sample(&mut rng)).collect();
        assert!(draws.iter().all(|&x| x >= 3));
        let p3 = draws.iter().filter(|&&x| x == 3).count() as f64 / draws.len() as f64;
        let expect = 3f64.powf(-2.5) / hurwitz_zeta(2.5, 3.0);
        assert!((p3 - expect).abs() < 0.015, "{p3} vs {expect}");
    }

    #[test]
    fn table_and_bisection_agree() {
        let s = PowerLawSampler::new(1.7f64, 2);
        for &u in &[0.9, 0.5, 0.1, 1e-3, 1e-5, 1e-7] {
            let x = s.invert(u);
            assert!(s.tail(x) >= u && s.tail(x + 1) < u, "u={u} x={x}");
        }
        assert_eq!(s.invert(1.0), 2);
    }

    #[test]
    fn mismatched_tails() {
        let pl = PowerLawFit { alpha: 2.0, xmin: 1, ks_distance: 0.1, n_tail: 3, tail_fraction: 1.0 };
        let ln = LogNormalFit { mu: 0.0, sigma: 1.0, xmin: 2, n_tail: 3, low_confidence: true };
        assert_eq!(compare_fits(&[1, 2, 3], &pl, &ln), Err(FitError::MismatchedTails(1, 2)));
    }
}
