//! Pearson and Spearman correlation with pairwise deletion of NaN entries.

use crate::scalar::Real;

/// Pearson correlation; NaN when fewer than two points or either side has
/// zero variance.
pub fn pearson<F: Real>(x: &[F], y: &[F]) -> F {
    assert_eq!(x.len(), y.len(), "pearson: length mismatch");
    let n = x.len();
    if n < 2 {
        return F::nan();
    }
    let nf = F::of_usize(n);
    let mx = x.iter().copied().sum::<F>() / nf;
    let my = y.iter().copied().sum::<F>() / nf;
    let (mut sxy, mut sxx, mut syy) = (F::zero(), F::zero(), F::zero());
    for (&a, &b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= F::zero() || syy <= F::zero() {
        return F::nan();
    }
    let r = sxy / (sxx * syy).sqrt();
    r.max(-F::one()).min(F::one())
}

/// 1-based ranks with ties replaced by their average rank.
pub fn average_ranks<F: Real>(values: &[F]) -> Vec<F> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("ranking NaN"));
    let mut ranks = vec![F::zero(); values.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i + 1;
        while j < idx.len() && values[idx[j]] == values[idx[i]] {
            j += 1;
        }
        // positions i..j (0-based) share rank mean(i+1..=j)
        let avg = F::of_usize(i + 1 + j) / F::two();
        for &k in &idx[i..j] {
            ranks[k] = avg;
        }
        i = j;
    }
    ranks
}

/// Spearman rank correlation over the pairs where both values are defined.
/// NaN when fewer than `min_points` such pairs remain.
pub fn spearman<F: Real>(x: &[F], y: &[F], min_points: usize) -> F {
    assert_eq!(x.len(), y.len(), "spearman: length mismatch");
    let (xs, ys): (Vec<F>, Vec<F>) = x
        .iter()
        .zip(y)
        .filter(|(a, b)| !a.is_nan() && !b.is_nan())
        .map(|(a, b)| (*a, *b))
        .unzip();
    if xs.len() < min_points.max(2) {
        return F::nan();
    }
    pearson(&average_ranks(&xs), &average_ranks(&ys))
}
