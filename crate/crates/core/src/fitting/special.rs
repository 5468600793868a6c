//! Hurwitz zeta, complementary error function and normal tail helpers.

use crate::scalar::Real;

// B_{2j} / (2j)! for j = 1..=10
const BERNOULLI_OVER_FACT: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
];

/// Hurwitz zeta ζ(s, q) = Σ_{k≥0} (k+q)^{-s} for s > 1, q > 0.
pub fn hurwitz_zeta<F: Real>(s: F, q: F) -> F {
    assert!(s > F::one() && q > F::zero(), "hurwitz_zeta: need s > 1, q > 0");
    let shift = F::of(16.0);
    let mut sum = F::zero();
    let mut a = q;
    while a < shift {
        sum += a.powf(-s);
        a += F::one();
    }
    // Euler-Maclaurin tail from a
    let mut tail = a.powf(F::one() - s) / (s - F::one()) + F::half() * a.powf(-s);
    let a2 = a * a;
    // rising factorial s(s+1)...(s+2j-2) times a^{-s-2j+1}
    let mut fac = s * a.powf(-s - F::one());
    let mut j = 0usize;
    loop {
        let term = F::of(BERNOULLI_OVER_FACT[j]) * fac;
        tail += term;
        j += 1;
        if j == BERNOULLI_OVER_FACT.len() || term.abs() <= F::epsilon() * tail.abs() {
            break;
        }
        let k = F::of_usize(2 * j);
        fac = fac * (s + k - F::one()) * (s + k) / a2;
    }
    sum + tail
}

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

/// Complementary error function.
pub fn erfc<F: Real>(x: F) -> F {
    if x.is_nan() {
        return x;
    }
    if x < F::zero() {
        return F::two() - erfc(-x);
    }
    if x < F::one() {
        // Maclaurin series for erf
        let x2 = x * x;
        let mut term = x;
        let mut sum = x;
        let mut n = 0usize;
        loop {
            n += 1;
            term = -term * x2 / F::of_usize(n);
            let c = term / F::of_usize(2 * n + 1);
            sum += c;
            if c.abs() <= F::epsilon() * sum.abs() * F::of(0.01) || n > 200 {
                break;
            }
        }
        return F::one() - F::of(FRAC_2_SQRT_PI) * sum;
    }
    if x > F::of(27.0) {
        return F::zero();
    }
    // continued fraction erfc(x) = exp(-x²)/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    // evaluated with modified Lentz
    let tiny = F::min_positive_value() / F::epsilon();
    let mut f = x;
    let mut c = x;
    let mut d = F::zero();
    for n in 1..5000 {
        let an = F::of_usize(n) * F::half();
        d = x + an * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = F::one() / d;
        let delta = c * d;
        f *= delta;
        if (delta - F::one()).abs() <= F::epsilon() {
            break;
        }
    }
    (-x * x).exp() / (f * F::of(std::f64::consts::PI).sqrt())
}

/// Upper tail of the standard normal, P(Z > z).
pub fn normal_sf<F: Real>(z: F) -> F {
    F::half() * erfc(z / F::two().sqrt())
}

/// Standard normal CDF.
pub fn normal_cdf<F: Real>(z: F) -> F {
    normal_sf(-z)
}

/// P(a < Z <= b) for a <= b, computed on whichever side loses less precision.
pub fn normal_interval<F: Real>(a: F, b: F) -> F {
    if a >= F::zero() {
        normal_sf(a) - normal_sf(b)
    } else if b <= F::zero() {
        normal_cdf(b) - normal_cdf(a)
    } else {
        F::one() - normal_cdf(a) - normal_sf(b)
    }
}
