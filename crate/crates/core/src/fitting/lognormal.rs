//! Discrete log-normal fit on a tail.
//!
//! An integer k >= xmin has probability
//! `[Φ(z(k+½)) − Φ(z(k−½))] / [1 − Φ(z(xmin−½))]` with `z(x) = (ln x − μ)/σ`,
//! i.e. a log-normal rounded to the nearest integer and truncated below xmin.

use super::special::{normal_interval, normal_sf};
use super::FitError;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct LogNormalFit<F> {
    pub mu: F,
    pub sigma: F,
    pub xmin: u64,
    pub n_tail: usize,
    /// Few observations or distinct values, or the optimum sits on a bound.
    pub low_confidence: bool,
}

const MU_BOUND: f64 = 200.0;
const LN_SIGMA_MIN: f64 = -9.0;
const LN_SIGMA_MAX: f64 = 6.0;

fn z<F: Real>(x: F, mu: F, sigma: F) -> F {
    (x.ln() - mu) / sigma
}

pub fn lognormal_logpmf<F: Real>(mu: F, sigma: F, xmin: u64, k: u64) -> F {
    let h = F::half();
    let lo = z(F::of_u64(k) - h, mu, sigma);
    let hi = z(F::of_u64(k) + h, mu, sigma);
    let norm = normal_sf(z(F::of_u64(xmin) - h, mu, sigma));
    normal_interval(lo, hi).ln() - norm.ln()
}

fn neg_loglik<F: Real>(tail: &[(u64, usize)], xmin: u64, mu: F, ln_sigma: F) -> F {
    if mu.abs() > F::of(MU_BOUND) || ln_sigma < F::of(LN_SIGMA_MIN) || ln_sigma > F::of(LN_SIGMA_MAX) {
        return F::infinity();
    }
    let sigma = ln_sigma.exp();
    let mut total = F::zero();
    for &(k, c) in tail {
        let l = lognormal_logpmf(mu, sigma, xmin, k);
        if !l.is_finite() {
            return F::infinity();
        }
        total -= F::of_usize(c) * l;
    }
    total
}

/// Nelder-Mead minimisation in two dimensions.
pub(crate) fn nelder_mead<F: Real>(f: impl Fn(F, F) -> F, start: (F, F), step: (F, F), tol: F) -> (F, F) {
    let mut pts = [
        (start.0, start.1),
        (start.0 + step.0, start.1),
        (start.0, start.1 + step.1),
    ];
    let mut vals = pts.map(|p| f(p.0, p.1));
    let h = F::half();
    for _ in 0..5000 {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap_or(std::cmp::Ordering::Equal));
        pts = idx.map(|i| pts[i]);
        vals = idx.map(|i| vals[i]);
        let spread = (vals[2] - vals[0]).abs();
        let size = (pts[1].0 - pts[0].0).abs().max((pts[1].1 - pts[0].1).abs())
            .max((pts[2].0 - pts[0].0).abs())
            .max((pts[2].1 - pts[0].1).abs());
        if vals[0].is_finite() && spread <= tol * (F::one() + vals[0].abs()) && size <= F::of(1e-10) {
            break;
        }
        let c = ((pts[0].0 + pts[1].0) * h, (pts[0].1 + pts[1].1) * h);
        let along = |t: F| (c.0 + t * (pts[2].0 - c.0), c.1 + t * (pts[2].1 - c.1));
        let r = along(-F::one());
        let fr = f(r.0, r.1);
        if fr < vals[0] {
            let e = along(-F::two());
            let fe = f(e.0, e.1);
            if fe < fr {
                pts[2] = e;
                vals[2] = fe;
            } else {
                pts[2] = r;
                vals[2] = fr;
            }
        } else if fr < vals[1] {
            pts[2] = r;
            vals[2] = fr;
        } else {
            let (k, fk) = if fr < vals[2] {
                let k = along(-h);
                (k, f(k.0, k.1))
            } else {
                let k = along(h);
                (k, f(k.0, k.1))
            };
            if fk < vals[2].min(fr) {
                pts[2] = k;
                vals[2] = fk;
            } else {
                for i in 1..3 {
                    pts[i] = ((pts[0].0 + pts[i].0) * h, (pts[0].1 + pts[i].1) * h);
                    vals[i] = f(pts[i].0, pts[i].1);
                }
            }
        }
    }
    let best = (0..3)
        .min_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap_or(std::cmp::Ordering::Equal))
        .expect("three points");
    pts[best]
}

/// Maximum-likelihood discrete log-normal on the observations >= xmin.
pub fn fit_lognormal<F: Real>(sample: &[u64], xmin: u64) -> Result<LogNormalFit<F>, FitError> {
    if xmin == 0 {
        return Err(FitError::NonPositive);
    }
    let mut tail: Vec<u64> = sample.iter().copied().filter(|&x| x >= xmin).collect();
    if tail.is_empty() {
        return Err(FitError::EmptyTail { xmin });
    }
    tail.sort_unstable();
    let mut grouped: Vec<(u64, usize)> = Vec::new();
    for x in &tail {
        match grouped.last_mut() {
            Some((v, c)) if v == x => *c += 1,
            _ => grouped.push((*x, 1)),
        }
    }
    if grouped.len() < 2 {
        return Err(FitError::DegenerateTail { xmin });
    }
    let n = F::of_usize(tail.len());
    let logs: Vec<F> = tail.iter().map(|&x| F::of_u64(x).ln()).collect();
    let mean = logs.iter().copied().sum::<F>() / n;
    let var = logs.iter().map(|&l| (l - mean) * (l - mean)).sum::<F>() / n;
    let sd = var.sqrt().max(F::of(0.1));

    let nll = |mu: F, ls: F| neg_loglik(&grouped, xmin, mu, ls);
    let tol = F::epsilon().sqrt() * F::of(1e-4);
    let mut best = nelder_mead(nll, (mean, sd.ln()), (F::half() * sd, F::of(0.3)), tol);
    // restart from the optimum to shake off a collapsed simplex
    for _ in 0..2 {
        best = nelder_mead(nll, best, (F::of(0.1), F::of(0.1)), tol);
    }
    let (mu, ln_sigma) = best;
    let on_bound = mu.abs() > F::of(MU_BOUND * 0.99)
        || ln_sigma < F::of(LN_SIGMA_MIN + 0.1)
        || ln_sigma > F::of(LN_SIGMA_MAX - 0.1);
    Ok(LogNormalFit {
        mu,
        sigma: ln_sigma.exp(),
        xmin,
        n_tail: tail.len(),
        low_confidence: tail.len() < 50 || grouped.len() < 3 || on_bound,
    })
}
